#include "situp/dataset.hpp"

#include "situp/error.hpp"
#include "situp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <tuple>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace situp {

Rect to_rect(const Box& b) noexcept
{
    return {b.x - 1.0 + b.w / 2.0, b.y - 1.0 + b.h / 2.0, b.w, b.h};
}

Box to_box(const Rect& r) noexcept
{
    return {r.cx - r.w / 2.0 + 1.0, r.cy - r.h / 2.0 + 1.0, r.w, r.h};
}

bool is_attribute_tag(std::string_view tag) noexcept
{
    return std::find(kAttributeTags.begin(), kAttributeTags.end(), tag) != kAttributeTags.end();
}

bool Sequence::has_attribute(std::string_view tag) const
{
    return std::find(attributes.begin(), attributes.end(), tag) != attributes.end();
}

FrameSource Sequence::source() const
{
    if (frames) {
        return memory_frames(frames);
    }
    FrameSource src;
    src.count = frame_files.size();
    src.load = [files = frame_files](std::size_t i) { return read_image(files[i]); };
    return src;
}

namespace {

std::string read_text_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool is_image(const fs::path& p)
{
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp";
}

// Numeric stems sort by value; anything else sorts after, by name.
struct FrameOrder {
    bool operator()(const fs::path& a, const fs::path& b) const
    {
        const auto ka = key(a);
        const auto kb = key(b);
        return ka < kb;
    }
    static std::tuple<int, long long, std::string> key(const fs::path& p)
    {
        const std::string stem = p.stem().string();
        long long value = 0;
        const auto [ptr, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), value);
        if (ec == std::errc{} && ptr == stem.data() + stem.size()) {
            return {0, value, stem};
        }
        return {1, 0, stem};
    }
};

}  // namespace

std::vector<Box> parse_groundtruth(std::string_view text)
{
    std::vector<Box> boxes;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace_if(line.begin(), line.end(), [](char c) { return c == ',' || c == '\t' || c == ';' || c == '\r'; }, ' ');
        std::istringstream ss(line);
        std::vector<double> v;
        double x = 0.0;
        while (ss >> x) {
            v.push_back(x);
        }
        if (v.empty()) {
            continue;
        }
        if (v.size() != 4 || !ss.eof()) {
            throw Error(ErrorCode::MissingGroundtruth, "groundtruth line " + std::to_string(line_no) + " is not x,y,w,h");
        }
        if (!(v[2] > 0.0 && v[3] > 0.0)) {
            throw Error(ErrorCode::MissingGroundtruth, "groundtruth line " + std::to_string(line_no) + " has no extent");
        }
        boxes.push_back({v[0], v[1], v[2], v[3]});
    }
    return boxes;
}

std::string format_groundtruth(const std::vector<Box>& boxes)
{
    std::string out;
    for (const auto& b : boxes) {
        out += format_double(b.x) + ',' + format_double(b.y) + ',' + format_double(b.w) + ',' + format_double(b.h) + '\n';
    }
    return out;
}

std::vector<std::string> parse_attributes(std::string_view text)
{
    std::string s(text);
    std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\t' || c == '\n' || c == '\r'; }, ' ');
    std::istringstream ss(s);
    std::vector<std::string> tags;
    std::string tag;
    while (ss >> tag) {
        if (!is_attribute_tag(tag)) {
            throw Error(ErrorCode::UnknownAttribute, "unknown attribute tag '" + tag + "'");
        }
        if (std::find(tags.begin(), tags.end(), tag) == tags.end()) {
            tags.push_back(tag);
        }
    }
    return tags;
}

Sequence load_otb(const fs::path& dir)
{
    Sequence seq;
    seq.name = dir.filename().string();
    if (seq.name.empty()) {
        seq.name = dir.parent_path().filename().string();
    }

    const fs::path gt_path = dir / "groundtruth_rect.txt";
    if (!fs::is_regular_file(gt_path)) {
        throw Error(ErrorCode::MissingGroundtruth, "no groundtruth_rect.txt in " + dir.string());
    }
    const fs::path img_dir = dir / "img";
    if (!fs::is_directory(img_dir)) {
        throw Error(ErrorCode::UnreadableFrame, "no img/ directory in " + dir.string());
    }
    for (const auto& entry : fs::directory_iterator(img_dir)) {
        if (entry.is_regular_file() && is_image(entry.path())) {
            seq.frame_files.push_back(entry.path());
        }
    }
    std::sort(seq.frame_files.begin(), seq.frame_files.end(), FrameOrder{});
    for (const auto& f : seq.frame_files) {
        std::ifstream probe(f, std::ios::binary);
        if (!probe || probe.peek() == EOF) {
            throw Error(ErrorCode::UnreadableFrame, "cannot read frame " + f.string());
        }
    }
    if (seq.frame_files.empty()) {
        throw Error(ErrorCode::UnreadableFrame, "no frames in " + img_dir.string());
    }

    seq.groundtruth = parse_groundtruth(read_text_file(gt_path));
    if (seq.groundtruth.size() != seq.frame_files.size()) {
        throw Error(ErrorCode::FrameCountMismatch,
            std::to_string(seq.frame_files.size()) + " frames but " + std::to_string(seq.groundtruth.size())
                + " groundtruth rows in " + dir.string());
    }
    if (const fs::path attrs = dir / "attrs.txt"; fs::is_regular_file(attrs)) {
        seq.attributes = parse_attributes(read_text_file(attrs));
    }
    return seq;
}

void write_otb(const Sequence& seq, const fs::path& dir)
{
    const fs::path img_dir = dir / "img";
    fs::create_directories(img_dir);
    const FrameSource src = seq.source();
    for (std::size_t i = 0; i < src.count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%04zu.png", i + 1);
        write_png(img_dir / name, src.load(i));
    }
    write_file_atomic(dir / "groundtruth_rect.txt", format_groundtruth(seq.groundtruth));
    std::string attrs;
    for (std::size_t i = 0; i < seq.attributes.size(); ++i) {
        attrs += (i ? "," : "") + seq.attributes[i];
    }
    if (!attrs.empty()) {
        write_file_atomic(dir / "attrs.txt", attrs + '\n');
    }
}

}  // namespace situp
