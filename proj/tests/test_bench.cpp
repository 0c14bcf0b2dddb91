#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "aco/bench.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace aco;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("aco_bench_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_instance(const fs::path& dir, const Instance& inst) {
    const fs::path path = dir / (inst.name + ".tsp");
    std::ofstream(path) << to_tsplib(inst);
    return path;
}

int cli(std::vector<std::string> args, std::string* err_text = nullptr) {
    args.insert(args.begin(), "aco-entropy");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("format_double round-trips") {
    Stream rng(77, 0, 0);
    for (int k = 0; k < 1000; ++k) {
        const double v = std::ldexp(rng.uniform(), static_cast<int>(rng.below(200)) - 100);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("trace CSV") {
    const Instance inst = test::random_instance(10, 5);
    Params p = standard_params(10);
    p.nc_max = 10;
    const RunResult r = run_fixed(inst, p);
    const fs::path dir = scratch("trace");
    const fs::path path = dir / "trace.csv";
    write_trace(r.trace, path);

    const std::string text = slurp(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 11);
    CHECK(text.rfind(std::string(kTraceHeader) + "\n", 0) == 0);

    const auto rows = read_trace(path);
    REQUIRE(rows.size() == 10);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const auto& rec = r.trace[t];
        CHECK(rows[t].iteration == rec.t);
        CHECK(rows[t].best_length == rec.best_length);
        CHECK(rows[t].mean_length == rec.mean);
        CHECK(rows[t].std_dev == rec.std_dev);
        CHECK(rows[t].pseudo_mean == rec.pseudo_mean);
        CHECK(rows[t].pseudo_std_dev == rec.pseudo_std_dev);
        CHECK(rows[t].entropy == r.entropy.values[t + 1]);
        CHECK(rows[t].entropy_rel_change == rec.entropy_rel_change);
    }
    CHECK_THROWS_AS(write_trace(std::vector<IterationRecord>{}, path), std::invalid_argument);
}

TEST_CASE("histogram tables") {
    IterationRecord rec;
    rec.lengths.resize(6);
    rec.lengths << 100, 120, 150, 151, 170, 210;
    rec.pheromone_probs = Eigen::VectorXd::Constant(6, 1.0 / 6);

    SUBCASE("uniform probabilities give identical columns") {
        const HistogramPair pair = histograms_for(rec, std::nullopt, std::nullopt);
        CHECK(pair.truth.bins() == 3);
        CHECK(pair.truth.masses == pair.pseudo.masses);
        CHECK(std::abs(pair.truth.masses.sum() - 1.0) <= 1e-9);
    }
    SUBCASE("forced bin width") {
        rec.pheromone_probs << 0.3, 0.1, 0.1, 0.1, 0.2, 0.2;
        const HistogramPair pair = histograms_for(rec, 50.0, std::nullopt);
        CHECK(pair.truth.bin_width == 50.0);
        CHECK(pair.truth.origin == 100.0);
        REQUIRE(pair.truth.bins() == 3);
        CHECK(pair.pseudo.masses(0) == doctest::Approx(0.4));
        CHECK(pair.pseudo.masses(1) == doctest::Approx(0.4));
        CHECK(pair.pseudo.masses(2) == doctest::Approx(0.2));
        const std::string csv = histogram_csv(pair);
        CHECK(csv.rfind("bin_lo,bin_hi,mass_true,mass_pseudo\n100,150,", 0) == 0);
    }
    SUBCASE("forced origin") {
        const HistogramPair pair = histograms_for(rec, 40.0, 80.0);
        CHECK(pair.truth.lo(0) == 80.0);
        CHECK(pair.truth.bins() == 4);
        CHECK(std::abs(pair.pseudo.masses.sum() - 1.0) <= 1e-9);
    }
}

TEST_CASE("emit_histograms") {
    const Instance inst = test::random_instance(12, 3);
    Params p = standard_params(12);
    p.nc_max = 12;
    const RunResult r = run_fixed(inst, p);
    const fs::path dir = scratch("hist");
    RunConfig config;

    const auto paths = emit_histograms(r.trace, config, 12, dir / "run");
    REQUIRE(paths.size() == 3);  // 1, 10 and the cap 12
    CHECK(paths[1].filename() == "run_hist_t10.csv");
    for (const auto& path : paths) {
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        CHECK(line == kHistogramHeader);
        double truth = 0, pseudo = 0;
        while (std::getline(in, line)) {
            std::stringstream row(line);
            std::string lo, hi, t, ps;
            std::getline(row, lo, ',');
            std::getline(row, hi, ',');
            std::getline(row, t, ',');
            std::getline(row, ps, ',');
            truth += std::stod(t);
            pseudo += std::stod(ps);
        }
        CHECK(std::abs(truth - 1.0) <= 1e-9);
        CHECK(std::abs(pseudo - 1.0) <= 1e-9);
    }

    config.histogram_iters = {2, 5};
    CHECK(emit_histograms(r.trace, config, 12, dir / "pick").size() == 2);
    config.histogram_iters = {13};
    CHECK_THROWS_AS(emit_histograms(r.trace, config, 12, dir / "bad"), std::out_of_range);
}

TEST_CASE("compare_modes") {
    const fs::path dir = scratch("compare");
    const Instance inst = test::random_instance(14, 8);
    RunConfig config;
    config.instance_path = write_instance(dir, inst);
    config.output_dir = dir / "out";
    config.fixed_iterations = 30;
    config.params.nc_max = 100;

    SUBCASE("degenerate criterion") {
        config.params.epsilon = 1e6;
        const ComparisonSummary s = compare_modes(config, inst);
        REQUIRE(s.iteration_ratio.has_value());
        CHECK(*s.iteration_ratio == 30.0);
        CHECK(s.entropy->avg_iters == 1.0);
    }
    SUBCASE("summary agrees with the emitted traces") {
        config.repeats = 3;
        config.params.seed = 10;
        const ComparisonSummary s = compare_modes(config, inst);
        CHECK(s.fixed_runs.size() == 3);
        CHECK(s.entropy_runs.size() == 3);
        double best_f = 0, best_e = 0, it_f = 0, it_e = 0;
        for (int r = 0; r < 3; ++r) {
            const std::string seed = std::to_string(10 + r);
            const auto fixed = read_trace(config.output_dir / (inst.name + "_fixed_seed" + seed + "_trace.csv"));
            const auto ent = read_trace(config.output_dir / (inst.name + "_entropy_seed" + seed + "_trace.csv"));
            best_f += static_cast<double>(fixed.back().best_length);
            best_e += static_cast<double>(ent.back().best_length);
            it_f += static_cast<double>(fixed.size());
            it_e += static_cast<double>(ent.size());
            for (std::size_t t = 0; t < ent.size(); ++t) {
                CHECK(ent[t].mean_length == fixed[t].mean_length);
                CHECK(ent[t].entropy == fixed[t].entropy);
            }
        }
        CHECK(s.fixed->avg_best == doctest::Approx(best_f / 3).epsilon(1e-12));
        CHECK(s.entropy->avg_best == doctest::Approx(best_e / 3).epsilon(1e-12));
        CHECK(s.fixed->avg_iters == doctest::Approx(it_f / 3));
        CHECK(s.entropy->avg_iters == doctest::Approx(it_e / 3));
        CHECK(*s.quality_gap == doctest::Approx((s.entropy->avg_best - s.fixed->avg_best) / s.fixed->avg_best));

        const auto j = nlohmann::json::parse(slurp(config.output_dir / "summary.json"));
        for (const char* key : {"instance", "repeats", "mode_fixed", "mode_entropy", "iteration_ratio", "quality_gap"})
            CHECK(j.contains(key));
        for (const char* key : {"avg_best", "avg_iters", "avg_seconds"}) {
            CHECK(j["mode_fixed"].contains(key));
            CHECK(j["mode_entropy"].contains(key));
        }
        CHECK(j["repeats"] == 3);
        CHECK(j["instance"] == inst.name);
        CHECK(fs::exists(config.output_dir / "summary.txt"));
    }
}

TEST_CASE("command line") {
    const fs::path dir = scratch("cli");
    const Instance inst = test::random_instance(12, 1);
    const std::string path = write_instance(dir, inst).string();

    SUBCASE("entropy mode writes a trace and a summary") {
        const fs::path out = dir / "entropy";
        CHECK(cli({"--instance", path, "--mode", "entropy", "--seed", "7", "--out", out.string()}) == 0);
        CHECK(fs::exists(out / (inst.name + "_entropy_seed7_trace.csv")));
        const auto j = nlohmann::json::parse(slurp(out / "summary.json"));
        CHECK(j["mode_fixed"].is_null());
        CHECK(j["mode_entropy"]["avg_iters"].get<double>() >= 1.0);
    }
    SUBCASE("missing instance flag") {
        std::string err;
        CHECK(cli({"--mode", "fixed"}, &err) == 2);
        CHECK(err.find("--instance") != std::string::npos);
    }
    SUBCASE("bad flag values") {
        CHECK(cli({"--instance", path, "--mode", "sideways"}) == 2);
        CHECK(cli({"--instance", path, "--epsilon", "0"}) == 2);
        CHECK(cli({"--instance", path, "--rho", "1.5"}) == 2);
        CHECK(cli({"--instance", path, "--hist-iters", "1,x"}) == 2);
        CHECK(cli({"--instance", path, "--log-base", "ten"}) == 2);
    }
    SUBCASE("unparseable instance") {
        const fs::path bad = dir / "bad.tsp";
        std::ofstream(bad) << "NAME: bad\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n";
        std::string err;
        CHECK(cli({"--instance", bad.string()}, &err) == 3);
        CHECK(err.find("line") != std::string::npos);
        CHECK(cli({"--instance", (dir / "absent.tsp").string()}) == 3);
    }
    SUBCASE("unusable output directory") {
        const fs::path blocker = dir / "blocker";
        std::ofstream(blocker) << "x";
        CHECK(cli({"--instance", path, "--mode", "fixed", "--iters", "3", "--out", (blocker / "sub").string()}) == 4);
    }
    SUBCASE("identical flags give byte-identical traces") {
        const std::vector<std::string> common{"--instance", path, "--mode", "compare", "--iters", "20",
                                              "--max-iters", "40", "--seed", "3", "--repeats", "2"};
        auto a = common, b = common;
        a.insert(a.end(), {"--out", (dir / "a").string()});
        b.insert(b.end(), {"--out", (dir / "b").string()});
        REQUIRE(cli(a) == 0);
        REQUIRE(cli(b) == 0);
        int compared = 0;
        for (const auto& entry : fs::directory_iterator(dir / "a")) {
            const auto name = entry.path().filename().string();
            if (name.find("_trace.csv") == std::string::npos && name.find("_hist_") == std::string::npos) continue;
            CHECK(slurp(entry.path()) == slurp(dir / "b" / name));
            ++compared;
        }
        CHECK(compared >= 8);
    }
    SUBCASE("histogram flags") {
        const fs::path out = dir / "hist";
        CHECK(cli({"--instance", path, "--mode", "fixed", "--iters", "5", "--hist-delta", "100",
                   "--hist-iters", "2,4", "--out", out.string()}) == 0);
        CHECK(fs::exists(out / (inst.name + "_fixed_seed0_hist_t2.csv")));
        CHECK(fs::exists(out / (inst.name + "_fixed_seed0_hist_t4.csv")));
        CHECK_FALSE(fs::exists(out / (inst.name + "_fixed_seed0_hist_t1.csv")));
        CHECK(cli({"--instance", path, "--mode", "fixed", "--iters", "5", "--hist-iters", "9", "--out",
                   out.string()}) == 2);
    }
}
