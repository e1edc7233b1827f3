#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "polarlink/app.hpp"

using namespace polarlink;
namespace fs = std::filesystem;

namespace {

Image random_image(int w, int h, int channels, std::mt19937_64& rng) {
    Image img;
    img.width = w;
    img.height = h;
    img.channels = channels;
    img.pixels.resize(img.byte_count());
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
    return img;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RunConfig image_config(const fs::path& in, const fs::path& out) {
    RunConfig cfg;
    cfg.mode = RunConfig::Mode::image;
    cfg.n_bits = 64;
    cfg.k_bits = 32;
    cfg.min_snr_db = 1.0;
    cfg.max_snr_db = 3.0;
    cfg.snr_step_db = 1.0;
    cfg.input_dir = in;
    cfg.output_dir = out;
    cfg.seed = 7;
    cfg.workers = 1;
    return cfg;
}

}  // namespace

TEST_CASE("snr grid endpoint is inclusive") {
    CHECK(snr_grid(1.0, 4.0, 1.0) == std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK(snr_grid(0.0, 1.0, 0.25).size() == 5);
    CHECK(snr_grid(2.0, 2.0, 1.0) == std::vector<double>{2.0});
    // accumulated floating error must not drop the last point
    auto fine = snr_grid(0.0, 3.0, 0.1);
    CHECK(fine.size() == 31);
}

TEST_CASE("config validation names the offending parameter") {
    RunConfig cfg = image_config("in", "out");
    cfg.n_bits = 500;
    CHECK_THROWS_WITH(validate_config(cfg), Catch::Matchers::ContainsSubstring("--n"));
    cfg.n_bits = 512;
    cfg.k_bits = 600;
    CHECK_THROWS_WITH(validate_config(cfg), Catch::Matchers::ContainsSubstring("--k"));
    cfg.k_bits = 256;
    cfg.min_snr_db = 5.0;
    cfg.max_snr_db = 1.0;
    CHECK_THROWS_WITH(validate_config(cfg), Catch::Matchers::ContainsSubstring("--snr-min"));
    cfg.min_snr_db = 1.0;
    cfg.snr_step_db = 0.0;
    CHECK_THROWS_WITH(validate_config(cfg), Catch::Matchers::ContainsSubstring("--snr-step"));
    cfg.snr_step_db = 1.0;
    cfg.input_dir.clear();
    CHECK_THROWS_WITH(validate_config(cfg), Catch::Matchers::ContainsSubstring("--input"));
}

TEST_CASE("image mode writes one PNG and one report block per image and SNR") {
    auto root = fs::temp_directory_path() / "polarlink_app_image";
    fs::remove_all(root);
    fs::create_directories(root / "in");
    std::mt19937_64 rng(1);
    save_png(random_image(8, 8, 1, rng), (root / "in" / "a.png").string());
    save_png(random_image(8, 6, 3, rng), (root / "in" / "b.png").string());

    auto cfg = image_config(root / "in", root / "out");
    REQUIRE(run_image_mode(cfg) == 0);

    int pngs = 0;
    for (double snr : {1.0, 2.0, 3.0}) {
        auto dir = root / "out" / snr_dir_name(snr);
        REQUIRE(fs::is_directory(dir));
        CHECK(fs::exists(dir / "a.png"));
        CHECK(fs::exists(dir / "b.png"));
        pngs += 2;
    }
    CHECK(pngs == 6);

    auto report = slurp(root / "out" / "report.txt");
    std::size_t blocks = 0, pos = 0;
    while ((pos = report.find("image: ", pos)) != std::string::npos) {
        ++blocks;
        pos += 7;
    }
    CHECK(blocks == 6);

    auto csv = slurp(root / "out" / "results.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 rows
    fs::remove_all(root);
}

TEST_CASE("image mode at very high SNR reproduces the source exactly") {
    auto root = fs::temp_directory_path() / "polarlink_app_lossless";
    fs::remove_all(root);
    fs::create_directories(root / "in");
    std::mt19937_64 rng(2);
    auto img = random_image(16, 16, 3, rng);
    save_png(img, (root / "in" / "src.png").string());

    auto cfg = image_config(root / "in", root / "out");
    cfg.min_snr_db = cfg.max_snr_db = 100.0;
    REQUIRE(run_image_mode(cfg) == 0);

    auto out = load_png((root / "out" / snr_dir_name(100.0) / "src.png").string());
    CHECK(out.pixels == img.pixels);
    fs::remove_all(root);
}

TEST_CASE("image mode reruns are byte-identical") {
    auto root = fs::temp_directory_path() / "polarlink_app_determinism";
    fs::remove_all(root);
    fs::create_directories(root / "in");
    std::mt19937_64 rng(3);
    save_png(random_image(12, 9, 1, rng), (root / "in" / "x.png").string());

    auto cfg1 = image_config(root / "in", root / "out1");
    auto cfg2 = image_config(root / "in", root / "out2");
    cfg1.report_timing = false;
    cfg2.report_timing = false;
    REQUIRE(run_image_mode(cfg1) == 0);
    REQUIRE(run_image_mode(cfg2) == 0);

    for (double snr : {1.0, 2.0, 3.0}) {
        CHECK(slurp(root / "out1" / snr_dir_name(snr) / "x.png") ==
              slurp(root / "out2" / snr_dir_name(snr) / "x.png"));
    }
    CHECK(slurp(root / "out1" / "results.csv") == slurp(root / "out2" / "results.csv"));
    CHECK(slurp(root / "out1" / "report.txt") == slurp(root / "out2" / "report.txt"));
    fs::remove_all(root);
}

TEST_CASE("image mode fails cleanly on an empty input directory") {
    auto root = fs::temp_directory_path() / "polarlink_app_empty";
    fs::remove_all(root);
    fs::create_directories(root / "in");
    auto cfg = image_config(root / "in", root / "out");
    CHECK(run_image_mode(cfg) != 0);
    fs::remove_all(root);
}

TEST_CASE("unreadable images are skipped with a nonzero exit") {
    auto root = fs::temp_directory_path() / "polarlink_app_bad";
    fs::remove_all(root);
    fs::create_directories(root / "in");
    std::ofstream(root / "in" / "broken.png") << "not a png";
    std::mt19937_64 rng(4);
    save_png(random_image(4, 4, 1, rng), (root / "in" / "good.png").string());

    auto cfg = image_config(root / "in", root / "out");
    cfg.min_snr_db = cfg.max_snr_db = 2.0;
    CHECK(run_image_mode(cfg) != 0);
    CHECK(fs::exists(root / "out" / snr_dir_name(2.0) / "good.png"));
    CHECK_FALSE(fs::exists(root / "out" / snr_dir_name(2.0) / "broken.png"));
    fs::remove_all(root);
}

TEST_CASE("sweep mode writes one waterfall row per grid point") {
    auto root = fs::temp_directory_path() / "polarlink_app_sweep";
    fs::remove_all(root);

    RunConfig cfg;
    cfg.mode = RunConfig::Mode::sweep;
    cfg.n_bits = 32;
    cfg.k_bits = 16;
    cfg.min_snr_db = 1.0;
    cfg.max_snr_db = 4.0;
    cfg.snr_step_db = 1.0;
    cfg.output_dir = root / "out";
    cfg.seed = 11;
    cfg.stop = StoppingRule{50, 500};
    REQUIRE(run_sweep_mode(cfg) == 0);

    auto csv = slurp(root / "out" / "waterfall.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
    CHECK(csv.rfind("snr_db,N,K,rate,frames,ber,fer\n", 0) == 0);

    REQUIRE(run_sweep_mode(cfg) == 0);
    CHECK(slurp(root / "out" / "waterfall.csv") == csv);
    fs::remove_all(root);
}

TEST_CASE("uncoded sweep at vanishing SNR reports coin-flip BER") {
    auto root = fs::temp_directory_path() / "polarlink_app_coinflip";
    fs::remove_all(root);

    RunConfig cfg;
    cfg.mode = RunConfig::Mode::sweep;
    cfg.n_bits = 64;
    cfg.k_bits = 64;
    cfg.min_snr_db = cfg.max_snr_db = -20.0;
    cfg.snr_step_db = 1.0;
    cfg.output_dir = root / "out";
    cfg.seed = 123;
    cfg.stop = StoppingRule{UINT64_MAX, 2000};
    REQUIRE(run_sweep_mode(cfg) == 0);

    std::ifstream in(root / "out" / "waterfall.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    auto last_comma = row.find_last_of(',');
    auto prev_comma = row.find_last_of(',', last_comma - 1);
    double ber = std::stod(row.substr(prev_comma + 1, last_comma - prev_comma - 1));
    CHECK(ber == Catch::Approx(0.5).margin(0.02));
    fs::remove_all(root);
}

TEST_CASE("construction dump lists every channel") {
    auto dump = dump_construction(8, 4, 2.0);
    CHECK(dump.rfind("# index z frozen\n", 0) == 0);
    CHECK(std::count(dump.begin(), dump.end(), '\n') == 9);
    int frozen = 0;
    std::istringstream in(dump);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (line.back() == '1') ++frozen;
    CHECK(frozen == 4);
}
