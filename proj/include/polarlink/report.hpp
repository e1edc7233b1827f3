#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polarlink/link.hpp"

namespace polarlink {

struct ImageReport {
    std::string image;
    int width = 0;
    int height = 0;
    std::uint64_t pixel_count = 0;
    int channels = 0;
    std::uint64_t total_bits = 0;
    std::uint64_t packet_count = 0;
    int N = 0;
    int K = 0;
    double rate = 0.0;
    double design_snr_db = 0.0;
    double snr_db = 0.0;
    std::string decoder;
    double ber = 0.0;
    double fer = 0.0;
    double elapsed_ms = 0.0;
    std::uint64_t seed = 0;
};

// Scientific notation with 4 significant digits and a bare exponent,
// e.g. 1.200e-2; zero renders as 0.000e0.
inline std::string sci4(double v) {
    if (v == 0.0) return "0.000e0";
    const bool negative = v < 0.0;
    double mag = std::abs(v);
    int exp = static_cast<int>(std::floor(std::log10(mag)));
    double mant = mag / std::pow(10.0, exp);
    // rounding the mantissa to 3 decimals may carry into the next decade
    if (mant >= 9.9995) {
        mant /= 10.0;
        ++exp;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%.3fe%d", negative ? "-" : "", mant, exp);
    return buf;
}

inline std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

namespace detail {

// Field order is fixed; text and CSV share it so the two always agree.
inline std::vector<std::pair<std::string, std::string>> report_fields(const ImageReport& r) {
    char elapsed[48];
    std::snprintf(elapsed, sizeof(elapsed), "%.3f", r.elapsed_ms);
    return {
        {"image", r.image},
        {"resolution", std::to_string(r.width) + "x" + std::to_string(r.height)},
        {"pixel_count", std::to_string(r.pixel_count)},
        {"channels", std::to_string(r.channels)},
        {"total_bits", std::to_string(r.total_bits)},
        {"packet_count", std::to_string(r.packet_count)},
        {"n", std::to_string(r.N)},
        {"k", std::to_string(r.K)},
        {"rate", format_double(r.rate)},
        {"design_snr_db", format_double(r.design_snr_db)},
        {"snr_db", format_double(r.snr_db)},
        {"decoder", r.decoder},
        {"ber", sci4(r.ber)},
        {"fer", sci4(r.fer)},
        {"elapsed_ms", elapsed},
        {"seed", std::to_string(r.seed)},
    };
}

}  // namespace detail

inline std::string render_report(const ImageReport& report) {
    std::ostringstream out;
    for (const auto& [key, value] : detail::report_fields(report))
        out << key << ": " << value << "\n";
    out << "\n";
    return out.str();
}

inline void append_report(const ImageReport& report, const std::filesystem::path& txt_path) {
    std::ofstream out(txt_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open report file '" + txt_path.string() + "'");
    out << render_report(report);
}

// One row per (image, SNR); header written when the file starts empty.
inline void append_csv(const ImageReport& report, const std::filesystem::path& csv_path) {
    const auto fields = detail::report_fields(report);
    const bool fresh =
        !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
    std::ofstream out(csv_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open CSV file '" + csv_path.string() + "'");
    if (fresh) {
        for (std::size_t i = 0; i < fields.size(); ++i)
            out << fields[i].first << (i + 1 < fields.size() ? "," : "\n");
    }
    for (std::size_t i = 0; i < fields.size(); ++i)
        out << fields[i].second << (i + 1 < fields.size() ? "," : "\n");
}

struct WaterfallRow {
    double snr_db = 0.0;
    int N = 0;
    int K = 0;
    double rate = 0.0;
    std::uint64_t frames = 0;
    double ber = 0.0;
    double fer = 0.0;
};

inline void append_waterfall_csv(const WaterfallRow& row, const std::filesystem::path& csv_path) {
    const bool fresh =
        !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
    std::ofstream out(csv_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open CSV file '" + csv_path.string() + "'");
    if (fresh) out << "snr_db,N,K,rate,frames,ber,fer\n";
    out << format_double(row.snr_db) << "," << row.N << "," << row.K << ","
        << format_double(row.rate) << "," << row.frames << "," << sci4(row.ber) << ","
        << sci4(row.fer) << "\n";
}

}  // namespace polarlink
