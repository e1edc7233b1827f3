#include <CLI11.hpp>

#include <iostream>

#include "polarlink/app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Polar-coded image transmission over a BPSK/AWGN channel"};

    polarlink::RunConfig cfg;
    std::string mode;
    std::string decoder = "exact";
    std::string input;
    std::string output;
    bool dump_code = false;

    app.add_option("--mode", mode, "Run mode: image or sweep")
        ->check(CLI::IsMember({"image", "sweep"}));
    app.add_option("--n", cfg.n_bits, "Codeword length N (power of two)")->required();
    app.add_option("--k", cfg.k_bits, "Information bits per frame K")->required();
    app.add_option("--snr-min", cfg.min_snr_db, "Lowest Eb/N0 in dB");
    app.add_option("--snr-max", cfg.max_snr_db, "Highest Eb/N0 in dB (inclusive)");
    app.add_option("--snr-step", cfg.snr_step_db, "Eb/N0 step in dB")->capture_default_str();
    app.add_option("--design-snr", cfg.design_snr_db, "Design Eb/N0 for code construction in dB")->capture_default_str();
    app.add_option("--input", input, "Directory of source PNG images (image mode)");
    app.add_option("--output", output, "Output directory");
    app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app.add_option("--decoder", decoder, "Check node: exact or min_sum")->capture_default_str()
        ->check(CLI::IsMember({"exact", "min_sum"}));
    app.add_option("--min-frame-errors", cfg.stop.min_frame_errors,
                   "Sweep mode: stop after this many frame errors")->capture_default_str();
    app.add_option("--max-frames", cfg.stop.max_frames,
                   "Sweep mode: frame budget per SNR point")->capture_default_str();
    app.add_flag("--verbose", cfg.verbose, "Per-packet/per-point progress output");
    app.add_flag("!--no-timing", cfg.report_timing,
                 "Report elapsed time as 0 so repeated runs diff cleanly");
    app.add_flag("--dump-code", dump_code,
                 "Print the reliability profile and frozen flags, then exit");

    CLI11_PARSE(app, argc, argv);

    cfg.decoder = decoder == "min_sum" ? polarlink::CheckNode::min_sum
                                       : polarlink::CheckNode::exact;
    cfg.input_dir = input;
    cfg.output_dir = output;

    try {
        if (dump_code) {
            if (!polarlink::is_power_of_two(cfg.n_bits) || cfg.k_bits < 1 ||
                cfg.k_bits > cfg.n_bits)
                throw std::invalid_argument("--dump-code needs valid --n and --k");
            std::cout << polarlink::dump_construction(cfg.n_bits, cfg.k_bits, cfg.design_snr_db);
            return 0;
        }
        if (mode.empty())
            throw std::invalid_argument("--mode is required (image or sweep)");
        cfg.mode = mode == "sweep" ? polarlink::RunConfig::Mode::sweep
                                   : polarlink::RunConfig::Mode::image;
        return cfg.mode == polarlink::RunConfig::Mode::image ? polarlink::run_image_mode(cfg)
                                                             : polarlink::run_sweep_mode(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
