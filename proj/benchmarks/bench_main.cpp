#include "situp/situp.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

situp::RealGrid random_grid(int w, int h)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    situp::RealGrid g(w, h);
    for (auto& v : g.data) {
        v = d(rng);
    }
    return g;
}

situp::ImagePlane random_patch(int w, int h)
{
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> d(0, 255);
    situp::ImagePlane img(w, h, 3);
    for (auto& v : img.data) {
        v = d(rng);
    }
    return img;
}

void BM_Dft2(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto g = random_grid(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(situp::dft2(g));
    }
}
BENCHMARK(BM_Dft2)->Arg(16)->Arg(24)->Arg(32)->Arg(64);

void BM_Hog31(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto patch = random_patch(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(situp::hog31(patch, 4));
    }
}
BENCHMARK(BM_Hog31)->Arg(64)->Arg(96);

void BM_FeatureStack(benchmark::State& state)
{
    const auto patch = random_patch(96, 96);
    const auto table = situp::load_default_color_names();
    for (auto _ : state) {
        benchmark::DoNotOptimize(situp::build_stack(patch, situp::FeatureConfig{}, table.get()));
    }
}
BENCHMARK(BM_FeatureStack);

void BM_TrackerStep(benchmark::State& state)
{
    const auto spec = situp::parse_synth_spec(
        "width = 480\nheight = 360\nframes = 40\nseed = 9\ntarget_w = 48\ntarget_h = 48\nvelocity_x = 1\n");
    const auto seq = situp::synth_sequence(spec).sequence;
    const auto& frames = *seq.frames;
    situp::TrackerConfig cfg;
    if (state.range(0) == 1) {
        cfg.pool = situp::ScalePool::singleton();
    }
    std::size_t i = 0;
    situp::Tracker tracker(cfg, situp::load_default_color_names());
    tracker.init(frames[0], situp::to_rect(seq.groundtruth[0]));
    for (auto _ : state) {
        if (++i == frames.size()) {
            state.PauseTiming();
            tracker.init(frames[0], situp::to_rect(seq.groundtruth[0]));
            i = 1;
            state.ResumeTiming();
        }
        benchmark::DoNotOptimize(tracker.step(frames[i]));
    }
}
BENCHMARK(BM_TrackerStep)->Arg(1)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
