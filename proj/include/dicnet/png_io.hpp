#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dicnet {

// Decoded PNG, 8-bit, HWC. channels is 1 (grayscale) or 3 (RGB).
struct PngImage {
    int h = 0;
    int w = 0;
    int channels = 0;
    std::vector<uint8_t> data;
};

// Reads any 8/16-bit gray/RGB/RGBA/palette PNG; palette and alpha are
// collapsed to RGB, 16-bit to 8-bit. Pure grayscale files stay 1-channel.
PngImage read_png(const std::string& path);

void write_png_rgb(const std::string& path, int h, int w, const uint8_t* rgb);
void write_png_gray(const std::string& path, int h, int w, const uint8_t* gray);

}  // namespace dicnet
