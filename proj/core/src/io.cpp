#include "situp/io.hpp"

#include "situp/error.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace situp {

ImagePlane read_image(const std::filesystem::path& path)
{
    cv::Mat mat;
    try {
        mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw Error(ErrorCode::FrameDecode, path.string() + ": " + e.what());
    }
    if (mat.empty()) {
        throw Error(ErrorCode::FrameDecode, "cannot decode " + path.string());
    }
    const double scale = mat.depth() == CV_16U ? 255.0 / 65535.0 : 1.0;
    cv::Mat converted;
    mat.convertTo(converted, CV_64F, scale);
    const int src_channels = converted.channels();
    const int channels = src_channels == 1 ? 1 : 3;
    ImagePlane img(converted.cols, converted.rows, channels);
    for (int r = 0; r < converted.rows; ++r) {
        const double* row = converted.ptr<double>(r);
        for (int c = 0; c < converted.cols; ++c) {
            const double* px = row + static_cast<std::ptrdiff_t>(c) * src_channels;
            if (channels == 1) {
                img.at(r, c) = std::clamp(px[0], 0.0, 255.0);
            } else {
                // OpenCV stores BGR(A).
                img.at(r, c, 0) = std::clamp(px[2], 0.0, 255.0);
                img.at(r, c, 1) = std::clamp(px[1], 0.0, 255.0);
                img.at(r, c, 2) = std::clamp(px[0], 0.0, 255.0);
            }
        }
    }
    return img;
}

void write_png(const std::filesystem::path& path, const ImagePlane& img)
{
    cv::Mat mat(img.height, img.width, img.channels == 1 ? CV_8UC1 : CV_8UC3);
    for (int r = 0; r < img.height; ++r) {
        auto* row = mat.ptr<unsigned char>(r);
        for (int c = 0; c < img.width; ++c) {
            auto q = [](double v) { return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L)); };
            if (img.channels == 1) {
                row[c] = q(img.at(r, c));
            } else {
                row[3 * c + 0] = q(img.at(r, c, 2));
                row[3 * c + 1] = q(img.at(r, c, 1));
                row[3 * c + 2] = q(img.at(r, c, 0));
            }
        }
    }
    const auto tmp = path.string() + ".tmp.png";
    if (!cv::imwrite(tmp, mat)) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::Io, "cannot write " + tmp);
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw Error(ErrorCode::Io, "short write to " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace situp
