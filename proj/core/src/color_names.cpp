#include "situp/error.hpp"
#include "situp/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace situp {

ColorNameTable::ColorNameTable(std::vector<Row> rows) : rows_(std::move(rows))
{
    if (rows_.size() != static_cast<std::size_t>(kColorNameBins)) {
        throw Error(ErrorCode::InvalidTable,
            "color-name table needs " + std::to_string(kColorNameBins) + " rows, got " + std::to_string(rows_.size()));
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        double sum = 0.0;
        for (double v : rows_[i]) {
            if (!std::isfinite(v) || v < 0.0) {
                throw Error(ErrorCode::InvalidTable, "row " + std::to_string(i) + " has a negative or non-finite entry");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-4) {
            throw Error(ErrorCode::InvalidTable, "row " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
}

namespace {

std::vector<ColorNameTable::Row> read_binary(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::vector<ColorNameTable::Row> rows(kColorNameBins);
    std::vector<float> buf(static_cast<std::size_t>(kColorNameBins) * kColorNameChannels);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(float)) || in.peek() != EOF) {
        throw Error(ErrorCode::InvalidTable, path.string() + " is not a 32768 x 11 float32 table");
    }
    static_assert(std::endian::native == std::endian::little, "binary table loader assumes little-endian");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int k = 0; k < kColorNameChannels; ++k) {
            rows[i][static_cast<std::size_t>(k)] = buf[i * kColorNameChannels + static_cast<std::size_t>(k)];
        }
    }
    return rows;
}

std::vector<ColorNameTable::Row> read_text(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    std::vector<ColorNameTable::Row> rows;
    rows.reserve(kColorNameBins);
    std::string line;
    std::vector<double> values;
    while (std::getline(in, line)) {
        std::replace_if(line.begin(), line.end(), [](char ch) { return ch == ',' || ch == '\t' || ch == ';'; }, ' ');
        std::istringstream ss(line);
        values.clear();
        double v = 0.0;
        while (ss >> v) {
            values.push_back(v);
        }
        if (values.empty()) {
            continue;
        }
        const std::size_t offset = values.size() == 14 ? 3 : 0;
        if (values.size() != 11 && values.size() != 14) {
            throw Error(ErrorCode::InvalidTable,
                path.string() + ": expected 11 or 14 columns, got " + std::to_string(values.size()));
        }
        ColorNameTable::Row row{};
        std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(offset), kColorNameChannels, row.begin());
        rows.push_back(row);
    }
    return rows;
}

struct Lab {
    double l, a, b;
};

double srgb_to_linear(double c)
{
    c /= 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

Lab to_lab(double r, double g, double b)
{
    const double rl = srgb_to_linear(r);
    const double gl = srgb_to_linear(g);
    const double bl = srgb_to_linear(b);
    const double x = (0.4124 * rl + 0.3576 * gl + 0.1805 * bl) / 0.95047;
    const double y = 0.2126 * rl + 0.7152 * gl + 0.0722 * bl;
    const double z = (0.0193 * rl + 0.1192 * gl + 0.9505 * bl) / 1.08883;
    auto f = [](double t) { return t > 0.008856 ? std::cbrt(t) : 7.787 * t + 16.0 / 116.0; };
    const double fx = f(x);
    const double fy = f(y);
    const double fz = f(z);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

}  // namespace

ColorNameTable ColorNameTable::load(const std::filesystem::path& path)
{
    if (path.extension() == ".bin") {
        return ColorNameTable(read_binary(path));
    }
    return ColorNameTable(read_text(path));
}

ColorNameTable ColorNameTable::prototypes()
{
    // black, blue, brown, grey, green, orange, pink, purple, red, white, yellow
    static constexpr double kPrototypeRgb[kColorNameChannels][3] = {
        {0, 0, 0}, {0, 60, 220}, {130, 80, 40}, {128, 128, 128}, {30, 160, 40}, {250, 140, 20},
        {250, 150, 200}, {130, 40, 160}, {210, 20, 30}, {255, 255, 255}, {245, 230, 40},
    };
    constexpr double kSigma = 18.0;  // Lab units

    std::array<Lab, kColorNameChannels> protos{};
    for (int k = 0; k < kColorNameChannels; ++k) {
        protos[static_cast<std::size_t>(k)] = to_lab(kPrototypeRgb[k][0], kPrototypeRgb[k][1], kPrototypeRgb[k][2]);
    }

    std::vector<Row> rows(kColorNameBins);
    for (int rq = 0; rq < 32; ++rq) {
        for (int gq = 0; gq < 32; ++gq) {
            for (int bq = 0; bq < 32; ++bq) {
                const Lab lab = to_lab(rq * 8 + 4, gq * 8 + 4, bq * 8 + 4);
                std::array<double, kColorNameChannels> d2{};
                for (std::size_t k = 0; k < d2.size(); ++k) {
                    const double dl = lab.l - protos[k].l;
                    const double da = lab.a - protos[k].a;
                    const double db = lab.b - protos[k].b;
                    d2[k] = dl * dl + da * da + db * db;
                }
                const double nearest = *std::min_element(d2.begin(), d2.end());
                Row& row = rows[static_cast<std::size_t>((rq << 10) | (gq << 5) | bq)];
                double sum = 0.0;
                for (std::size_t k = 0; k < d2.size(); ++k) {
                    row[k] = std::exp(-(d2[k] - nearest) / (2.0 * kSigma * kSigma));
                    sum += row[k];
                }
                for (double& v : row) {
                    v /= sum;
                }
            }
        }
    }
    return ColorNameTable(std::move(rows));
}

void ColorNameTable::save_binary(const std::filesystem::path& path) const
{
    std::vector<float> buf;
    buf.reserve(rows_.size() * kColorNameChannels);
    for (const auto& row : rows_) {
        for (double v : row) {
            buf.push_back(static_cast<float>(v));
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
}

std::shared_ptr<const ColorNameTable> load_default_color_names()
{
    std::vector<std::filesystem::path> candidates;
    if (const char* env = std::getenv("SITUP_CN_TABLE"); env != nullptr && *env != '\0') {
        candidates.emplace_back(env);
    } else {
#ifdef SITUP_BUILD_CN_TABLE
        candidates.emplace_back(SITUP_BUILD_CN_TABLE);
#endif
#ifdef SITUP_INSTALL_CN_TABLE
        candidates.emplace_back(SITUP_INSTALL_CN_TABLE);
#endif
    }
    for (const auto& path : candidates) {
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) {
            continue;
        }
        try {
            return std::make_shared<const ColorNameTable>(ColorNameTable::load(path));
        } catch (const Error& e) {
            std::cerr << "warning: " << e.what() << '\n';
        }
    }
    std::cerr << "warning: no color-name table found; color-name features disabled\n";
    return nullptr;
}

}  // namespace situp
