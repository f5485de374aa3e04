#include "commands.hpp"

#include "situp/situp.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace situp::cli {
namespace fs = std::filesystem;

namespace {

struct TrackerFlags {
    std::string config;
    std::string pool;
    std::string criterion;
};

void add_tracker_flags(CLI::App* cmd, TrackerFlags& f)
{
    cmd->add_option("--config", f.config, "tracker config file (key = value)")->check(CLI::ExistingFile);
    cmd->add_option("--pool", f.pool, "comma-separated scale factors, e.g. 0.99,1.0,1.01");
    cmd->add_option("--criterion", f.criterion, "scale score: apce or maxresp");
}

TrackerConfig resolve_config(const TrackerFlags& f)
{
    TrackerConfig cfg = f.config.empty() ? TrackerConfig{} : load_config(f.config);
    if (!f.pool.empty()) {
        cfg.pool = ScalePool(parse_number_list(f.pool));
    }
    if (!f.criterion.empty()) {
        cfg.criterion = parse_criterion(f.criterion);
    }
    cfg.validate();
    return cfg;
}

std::shared_ptr<const ColorNameTable> color_table_for(const TrackerConfig& cfg)
{
    return cfg.features.color_names ? load_default_color_names() : nullptr;
}

std::string format_track(const SequenceRun& run)
{
    std::string s;
    for (std::size_t i = 0; i < run.boxes.size(); ++i) {
        const Box b = to_box(run.boxes[i]);
        s += std::to_string(i + 1) + ',' + format_double(b.x) + ',' + format_double(b.y) + ',' + format_double(b.w) +
             ',' + format_double(b.h) + '\n';
    }
    return s;
}

std::string format_diagnostics(const SequenceRun& run, const ScalePool& pool)
{
    std::string s = "frame,chosen_factor,applied_factor,no_confidence";
    for (double f : pool.factors()) {
        s += ",apce_" + format_double(f);
    }
    for (double f : pool.factors()) {
        s += ",peak_" + format_double(f);
    }
    s += '\n';
    for (const auto& d : run.diagnostics) {
        s += std::to_string(d.frame_index + 1) + ',' + format_double(d.chosen_factor) + ',' +
             format_double(d.applied_factor) + ',' + (d.no_confidence ? "1" : "0");
        for (double v : d.per_scale_apce) {
            s += ',' + format_double(v);
        }
        for (double v : d.per_scale_peak) {
            s += ',' + format_double(v);
        }
        s += '\n';
    }
    return s;
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
    }
}

int cmd_track(const fs::path& seq_dir, const fs::path& out_file, const TrackerFlags& flags, std::ostream& out,
    std::ostream& err)
{
    const TrackerConfig cfg = resolve_config(flags);
    const Sequence seq = load_otb(seq_dir);
    const SequenceRun run = run_sequence(seq.source(), to_rect(seq.groundtruth.front()), cfg, color_table_for(cfg));
    if (out_file.has_parent_path()) {
        ensure_dir(out_file.parent_path());
    }
    write_file_atomic(out_file, format_track(run));
    write_file_atomic(fs::path(out_file.string() + ".diag.csv"), format_diagnostics(run, cfg.pool));
    if (run.partial) {
        err << "warning: " << seq.name << ": run stopped early: " << run.error << '\n';
    }
    out << seq.name << ": " << run.boxes.size() << " frames\n";
    return kOk;
}

struct EvalFlags {
    fs::path root;
    fs::path out;
    std::string attr;
    std::string method = "SITUP";
    int parallel = 1;
    bool timing = false;
    bool include_first = false;
    bool baseline = false;
};

std::vector<fs::path> sequence_dirs(const fs::path& root)
{
    std::vector<fs::path> dirs;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root, ec)) {
        if (entry.is_directory() && fs::exists(entry.path() / "groundtruth_rect.txt")) {
            dirs.push_back(entry.path());
        }
    }
    if (ec) {
        throw Error(ErrorCode::Io, "cannot list " + root.string() + ": " + ec.message());
    }
    std::sort(dirs.begin(), dirs.end());
    return dirs;
}

struct MethodRun {
    std::string name;
    TrackerConfig cfg;
};

struct Slot {
    std::optional<SequenceResult> result;
    std::vector<Rect> boxes;
    std::string error;
};

std::vector<Slot> run_all(const std::vector<Sequence>& seqs, const TrackerConfig& cfg,
    const std::shared_ptr<const ColorNameTable>& cn, const EvalFlags& flags)
{
    std::vector<Slot> slots(seqs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seqs.size(); i = next++) {
            const Sequence& s = seqs[i];
            try {
                SequenceRun run = run_sequence(s.source(), to_rect(s.groundtruth.front()), cfg, cn);
                if (run.partial) {
                    slots[i].error = "partial run: " + run.error;
                }
                SequenceResult r = evaluate_sequence(s.name, s.attributes, run.boxes, s.groundtruth, flags.include_first);
                r.steps = run.diagnostics.size();
                r.step_seconds = run.step_seconds;
                slots[i].result = std::move(r);
                slots[i].boxes = std::move(run.boxes);
            } catch (const Error& e) {
                slots[i].error = e.what();
            }
        }
    };
    const int n = std::max(1, std::min<int>(flags.parallel, static_cast<int>(seqs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return slots;
}

int cmd_eval(const EvalFlags& flags, const TrackerFlags& tflags, std::ostream& out, std::ostream& err)
{
    if (flags.parallel < 1) {
        throw Error(ErrorCode::InvalidConfig, "--parallel must be >= 1");
    }
    std::optional<std::string> attr;
    if (!flags.attr.empty()) {
        if (!is_attribute_tag(flags.attr)) {
            throw Error(ErrorCode::UnknownAttribute, "unknown attribute tag '" + flags.attr + "'");
        }
        attr = flags.attr;
    }
    const TrackerConfig cfg = resolve_config(tflags);

    std::vector<Sequence> seqs;
    std::size_t load_failures = 0;
    for (const auto& dir : sequence_dirs(flags.root)) {
        try {
            seqs.push_back(load_otb(dir));
        } catch (const Error& e) {
            err << "warning: skipping " << dir.filename().string() << ": " << e.what() << '\n';
            ++load_failures;
        }
    }
    if (seqs.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "no sequences loaded from " + flags.root.string());
    }

    std::vector<MethodRun> methods{{flags.method, cfg}};
    if (flags.baseline) {
        TrackerConfig base = cfg;
        base.pool = ScalePool::singleton();
        methods.push_back({flags.method + "-singleton", base});
    }

    const auto cn = color_table_for(cfg);
    ensure_dir(flags.out);
    std::vector<SliceReport> table;
    std::string per_sequence;
    std::string failures;
    std::size_t run_failures = 0;
    for (const auto& m : methods) {
        std::vector<Slot> slots = run_all(seqs, m.cfg, cn, flags);
        std::vector<SequenceResult> results;
        const fs::path traj_dir = flags.out / "trajectories" / m.name;
        ensure_dir(traj_dir);
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (!slots[i].error.empty()) {
                err << "warning: " << m.name << '/' << seqs[i].name << ": " << slots[i].error << '\n';
                failures += m.name + ',' + seqs[i].name + ',' + slots[i].error + '\n';
            }
            if (!slots[i].result) {
                ++run_failures;
                continue;
            }
            std::vector<Box> boxes;
            for (const auto& r : slots[i].boxes) {
                boxes.push_back(to_box(r));
            }
            write_file_atomic(traj_dir / (seqs[i].name + ".txt"), format_groundtruth(boxes));
            results.push_back(std::move(*slots[i].result));
        }
        if (results.empty()) {
            throw Error(ErrorCode::EmptyTrajectory, m.name + ": every sequence failed");
        }
        std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
        std::string rows = format_per_sequence(m.name, results);
        if (!per_sequence.empty()) {
            rows.erase(0, rows.find('\n') + 1);
        }
        per_sequence += rows;
        for (auto& row : aggregate(results, m.name, attr)) {
            const fs::path curve_dir = flags.out / "curves";
            ensure_dir(curve_dir);
            write_file_atomic(curve_dir / (m.name + '_' + row.slice + "_precision.csv"), format_curve(row.precision));
            write_file_atomic(curve_dir / (m.name + '_' + row.slice + "_success.csv"), format_curve(row.success));
            table.push_back(std::move(row));
        }
    }

    write_file_atomic(flags.out / "table.csv", format_table(table, flags.timing));
    write_file_atomic(flags.out / "per_sequence.csv", per_sequence);
    write_file_atomic(flags.out / "failures.csv", failures);
    out << "evaluated " << seqs.size() << " sequences";
    if (load_failures + run_failures > 0) {
        out << ", excluded " << load_failures + run_failures;
    }
    out << '\n' << format_table(table, flags.timing);
    return kOk;
}

int cmd_synth(const fs::path& spec_file, const fs::path& out_dir, std::ostream& out)
{
    const SynthOutput s = synth_sequence(load_synth_spec(spec_file));
    write_otb(s.sequence, out_dir);
    out << s.sequence.name << ": " << s.sequence.frame_count() << " frames -> " << out_dir.string() << '\n';
    return kOk;
}

int cmd_ablate(const fs::path& seq_dir, const fs::path& out_dir, const TrackerFlags& flags, std::ostream& out)
{
    const TrackerConfig cfg = resolve_config(flags);
    const Sequence seq = load_otb(seq_dir);
    const AblationReport rep = apce_vs_maxresponse_ablation(seq, cfg, color_table_for(cfg));
    ensure_dir(out_dir);
    write_file_atomic(out_dir / "ablation.csv", format_ablation(rep));
    write_file_atomic(out_dir / "summary.csv", format_ablation_summary(rep));
    out << format_ablation_summary(rep);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Scale-adaptive correlation filter tracker"};
    app.name("situp");
    app.require_subcommand(1);

    fs::path track_seq, track_out;
    TrackerFlags track_flags;
    auto* track = app.add_subcommand("track", "Track one OTB-format sequence");
    track->add_option("--seq", track_seq, "sequence directory")->required()->check(CLI::ExistingDirectory);
    track->add_option("--out", track_out, "output box file (frame,x,y,w,h)")->required();
    add_tracker_flags(track, track_flags);

    EvalFlags eval_flags;
    TrackerFlags eval_tflags;
    auto* eval = app.add_subcommand("eval", "One-pass evaluation over a dataset root");
    eval->add_option("--root", eval_flags.root, "directory of OTB-format sequences")
        ->required()
        ->check(CLI::ExistingDirectory);
    eval->add_option("--out", eval_flags.out, "report directory")->required();
    eval->add_option("--attr", eval_flags.attr, "report only this attribute slice");
    eval->add_option("--parallel", eval_flags.parallel, "sequences tracked concurrently");
    eval->add_option("--method", eval_flags.method, "method name in reports");
    eval->add_flag("--timing", eval_flags.timing, "report fps (not reproducible)");
    eval->add_flag("--include-first", eval_flags.include_first, "score the initialization frame too");
    eval->add_flag("--baseline", eval_flags.baseline, "also run the singleton-pool baseline");
    add_tracker_flags(eval, eval_tflags);

    fs::path synth_spec, synth_out;
    auto* synth = app.add_subcommand("synth", "Render a synthetic sequence from a spec file");
    synth->add_option("--spec", synth_spec, "spec file")->required()->check(CLI::ExistingFile);
    synth->add_option("--out", synth_out, "output sequence directory")->required();

    fs::path ablate_seq, ablate_out;
    TrackerFlags ablate_flags;
    auto* ablate = app.add_subcommand("ablate", "Compare APCE and max-response scale selection");
    ablate->add_option("--seq", ablate_seq, "sequence directory")->required()->check(CLI::ExistingDirectory);
    ablate->add_option("--out", ablate_out, "output directory")->required();
    add_tracker_flags(ablate, ablate_flags);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*track) {
            return cmd_track(track_seq, track_out, track_flags, out, err);
        }
        if (*eval) {
            return cmd_eval(eval_flags, eval_tflags, out, err);
        }
        if (*synth) {
            return cmd_synth(synth_spec, synth_out, out);
        }
        if (*ablate) {
            return cmd_ablate(ablate_seq, ablate_out, ablate_flags, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace situp::cli
