#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "polarlink/image.hpp"
#include "polarlink/image_io.hpp"
#include "polarlink/report.hpp"

namespace polarlink {

struct RunConfig {
    enum class Mode { image, sweep };

    Mode mode = Mode::image;
    int n_bits = 0;  // N
    int k_bits = 0;  // K
    double min_snr_db = 0.0;
    double max_snr_db = 0.0;
    double snr_step_db = 1.0;
    double design_snr_db = 2.0;
    std::filesystem::path input_dir;
    std::filesystem::path output_dir;
    std::uint64_t seed = 0;
    CheckNode decoder = CheckNode::exact;
    StoppingRule stop;
    int workers = 0;  // 0 = POLARLINK_THREADS env, then hardware concurrency
    bool verbose = false;
    // When false, elapsed_ms is reported as 0 so repeated runs diff cleanly.
    bool report_timing = true;
};

inline void validate_config(const RunConfig& cfg) {
    if (!is_power_of_two(cfg.n_bits) || cfg.n_bits < 2)
        throw std::invalid_argument("--n must be a power of two >= 2, got " +
                                    std::to_string(cfg.n_bits));
    if (cfg.k_bits < 1 || cfg.k_bits > cfg.n_bits)
        throw std::invalid_argument("--k must satisfy 1 <= K <= N, got " +
                                    std::to_string(cfg.k_bits));
    if (cfg.min_snr_db > cfg.max_snr_db)
        throw std::invalid_argument("--snr-min must not exceed --snr-max");
    if (!(cfg.snr_step_db > 0.0))
        throw std::invalid_argument("--snr-step must be positive");
    if (cfg.mode == RunConfig::Mode::image && cfg.input_dir.empty())
        throw std::invalid_argument("--input is required in image mode");
    if (cfg.output_dir.empty())
        throw std::invalid_argument("--output is required");
}

// Inclusive endpoint: min, min+step, ... <= max (with a small tolerance).
inline std::vector<double> snr_grid(double min_db, double max_db, double step_db) {
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double snr = min_db + i * step_db;
        if (snr > max_db + 1e-9) break;
        grid.push_back(snr);
    }
    return grid;
}

inline int resolve_workers(const RunConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("POLARLINK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

inline std::string snr_dir_name(double snr_db) {
    return "snr_" + format_double(snr_db);
}

inline std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    return files;
}

// SNR loop outer, image loop inner. Per-SNR subdirectories, cumulative
// report.txt and results.csv in the output root.
inline int run_image_mode(const RunConfig& cfg) {
    validate_config(cfg);
    PolarCode code = build_code(cfg.n_bits, cfg.k_bits, cfg.design_snr_db);
    const std::vector<double> grid = snr_grid(cfg.min_snr_db, cfg.max_snr_db, cfg.snr_step_db);
    const int workers = resolve_workers(cfg);

    auto files = list_images(cfg.input_dir);
    if (files.empty()) {
        std::cerr << "error: no PNG images found in '" << cfg.input_dir.string() << "'\n";
        return 1;
    }

    std::filesystem::create_directories(cfg.output_dir);
    const auto report_path = cfg.output_dir / "report.txt";
    const auto csv_path = cfg.output_dir / "results.csv";
    std::filesystem::remove(report_path);
    std::filesystem::remove(csv_path);

    bool any_failed = false;
    for (std::size_t snr_idx = 0; snr_idx < grid.size(); ++snr_idx) {
        const double snr_db = grid[snr_idx];
        const auto snr_dir = cfg.output_dir / snr_dir_name(snr_db);
        std::filesystem::create_directories(snr_dir);
        const ChannelParams params = make_channel_params(snr_db, code.rate, cfg.seed);

        for (std::size_t img_idx = 0; img_idx < files.size(); ++img_idx) {
            const auto& file = files[img_idx];
            Image image;
            try {
                image = load_png(file.string());
            } catch (const std::exception& e) {
                std::cerr << "warning: skipping '" << file.string() << "': " << e.what() << "\n";
                any_failed = true;
                continue;
            }

            ImageRunResult run = transmit_image(image, code, params, cfg.decoder,
                                                img_idx, snr_idx, workers);
            save_png(run.degraded, (snr_dir / file.filename()).string());

            if (cfg.verbose)
                std::cout << file.filename().string() << " @ " << format_double(snr_db)
                          << " dB: " << run.packet_count << " packets, ber "
                          << sci4(run.stats.ber()) << ", fer " << sci4(run.stats.fer()) << "\n";

            ImageReport report;
            report.image = file.filename().string();
            report.width = image.width;
            report.height = image.height;
            report.pixel_count = image.pixel_count();
            report.channels = image.channels;
            report.total_bits = image.bit_count();
            report.packet_count = run.packet_count;
            report.N = code.N;
            report.K = code.K;
            report.rate = code.rate;
            report.design_snr_db = cfg.design_snr_db;
            report.snr_db = snr_db;
            report.decoder = to_string(cfg.decoder);
            report.ber = run.stats.ber();
            report.fer = run.stats.fer();
            report.elapsed_ms = cfg.report_timing ? run.elapsed_ms : 0.0;
            report.seed = cfg.seed;
            append_report(report, report_path);
            append_csv(report, csv_path);
        }
    }
    return any_failed ? 1 : 0;
}

inline int run_sweep_mode(const RunConfig& cfg) {
    validate_config(cfg);
    PolarCode code = build_code(cfg.n_bits, cfg.k_bits, cfg.design_snr_db);
    const std::vector<double> grid = snr_grid(cfg.min_snr_db, cfg.max_snr_db, cfg.snr_step_db);

    std::filesystem::create_directories(cfg.output_dir);
    const auto csv_path = cfg.output_dir / "waterfall.csv";
    std::filesystem::remove(csv_path);

    for (std::size_t snr_idx = 0; snr_idx < grid.size(); ++snr_idx) {
        const double snr_db = grid[snr_idx];
        const ChannelParams params = make_channel_params(snr_db, code.rate, cfg.seed);
        MonteCarloResult mc = monte_carlo_point(code, params, cfg.stop, cfg.decoder, snr_idx);

        WaterfallRow row;
        row.snr_db = snr_db;
        row.N = code.N;
        row.K = code.K;
        row.rate = code.rate;
        row.frames = mc.stats.frames;
        row.ber = mc.stats.ber();
        row.fer = mc.stats.fer();
        append_waterfall_csv(row, csv_path);

        if (cfg.verbose)
            std::cout << format_double(snr_db) << " dB: " << mc.stats.frames << " frames, ber "
                      << sci4(row.ber) << ", fer " << sci4(row.fer)
                      << (mc.reason == StopReason::error_target ? " (error target)"
                                                                : " (frame limit)")
                      << "\n";
    }
    return 0;
}

// Diagnostic listing of the reliability profile and frozen flags.
inline std::string dump_construction(int N, int K, double design_snr_db) {
    int n = 0;
    while ((1 << n) < N) ++n;
    const double rate = static_cast<double>(K) / N;
    ReliabilityProfile profile = bhattacharyya_profile(n, design_snr_db, rate);
    PolarCode code = build_code(N, K, profile.z);
    std::ostringstream out;
    out << "# index z frozen\n";
    for (int i = 0; i < N; ++i)
        out << i << " " << sci4(profile.z[i]) << " " << int(code.is_frozen[i]) << "\n";
    return out.str();
}

}  // namespace polarlink
