// Copyright 2026 The qvlbi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "qvlbi/photometry.hpp"

namespace {

using qvlbi::cli::dispatch;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("qvlbi_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(cli, version) {
    const auto r = run({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "qvlbi 1.0.0\n");
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"photometry", "--no-such-flag"}).code, 2);
    EXPECT_EQ(run({"geodesy"}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "cavity"}).code, 2);
    EXPECT_EQ(run({"reproduce"}).code, 2);
}

TEST(cli, validation_errors) {
    const auto r = run({"state", "--epsilon", "0.5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
    EXPECT_EQ(run({"state", "--epsilon", "0.5", "--allow-strong"}).code, 0);
    EXPECT_EQ(run({"consumption", "--epsilon", "1.5"}).code, 1);
    EXPECT_EQ(run({"precession", "--eccentricity", "1.2"}).code, 1);
    EXPECT_EQ(run({"protocol", "nope"}).code, 2);
}

TEST(cli, photometry_document) {
    const auto r = run({"photometry", "--magnitude", "0", "--wavelength-nm", "555", "--bandwidth-ghz", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r);
    EXPECT_DOUBLE_EQ(j["m_ab"].get<double>(), 0.0);
    EXPECT_NEAR(j["delta_nu_hz"].get<double>(), 1e10, 1.0);
    EXPECT_GT(j["epsilon"].get<double>(), 0.0);
    EXPECT_NEAR(j["epsilon_planet"].get<double>() / j["epsilon"].get<double>(), qvlbi::photometry::kPlanetContrast, 1e-22);
}

TEST(cli, csv_format) {
    const auto r = run({"--format", "csv", "photometry", "--table", "appendix"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        ++count;
    }
    EXPECT_EQ(count, 9);
}

TEST(cli, qfi_document) {
    const auto r = run({"qfi", "--epsilon", "1e-3", "--gamma", "0", "--phi", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r);
    EXPECT_EQ(j["j_phi"].get<double>(), 0.0);
    EXPECT_EQ(j["crb_phi_status"], "unidentifiable");
    EXPECT_TRUE(j["crb_phi"].is_null());

    const auto g1 = parse(run({"qfi", "--epsilon", "1e-3", "--gamma", "1"}));
    EXPECT_TRUE(g1["gamma_divergent"].get<bool>());
    EXPECT_EQ(g1["crb_gamma_status"], "singular_limit");
}

TEST(cli, protocol_binary_search) {
    const auto r = run({"protocol", "binary-search", "--bins", "4", "--photon-bin", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r);
    EXPECT_EQ(j["consumed"].get<int>(), 2);
    const auto empty = parse(run({"protocol", "binary-search", "--bins", "8", "--epsilon", "1e-9"}));
    EXPECT_EQ(empty["rows"][0]["status"], "precondition_violated");
}

TEST(cli, geodesy_crb) {
    const auto j = parse(run({"geodesy", "crb"}));
    EXPECT_TRUE(j["identifiable"].get<bool>());
    EXPECT_NEAR(j["delta_b_m"].get<double>(), 2.4669016e-10, 1e-16);
}

TEST(cli, seeded_runs_are_byte_identical) {
    const std::vector<std::string> args{"--seed", "17", "geodesy", "mc", "--photons", "1000", "--shots", "20"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto serial = args;
    serial.push_back("--serial");
    EXPECT_EQ(run(serial).out, a.out);
    const auto other = run({"--seed", "18", "geodesy", "mc", "--photons", "1000", "--shots", "20"});
    EXPECT_NE(other.out, a.out);
}

TEST(cli, seed_from_environment) {
    const std::vector<std::string> args{"protocol", "unary", "--bins", "64", "--epsilon", "0.05", "--shots", "3"};
    ::setenv("QVLBI_SEED", "99", 1);
    const auto env = run(args);
    ::unsetenv("QVLBI_SEED");
    auto flagged = args;
    flagged.insert(flagged.begin(), {"--seed", "99"});
    const auto flag = run(flagged);
    ASSERT_EQ(env.code, 0) << env.err;
    EXPECT_EQ(env.out, flag.out);
    EXPECT_EQ(parse(env)["seed"].get<std::uint64_t>(), 99u);
}

TEST(cli, config_file_sets_options) {
    const auto dir = scratch("config");
    const auto path = dir / "run.ini";
    {
        std::ofstream f(path);
        f << "seed=5\n[consumption]\nepsilon=7e-7\ndelta-nu-ghz=10\n";
    }
    const auto j = parse(run({"--config", path.string(), "consumption"}));
    EXPECT_NEAR(j["pairs_per_s"].get<double>(), 143123, 1.0);
    std::filesystem::remove_all(dir);
}

TEST(cli, out_file) {
    const auto dir = scratch("out");
    const auto path = dir / "cavity.json";
    const auto r = run({"--out", path.string(), "cavity"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    EXPECT_NEAR(j["cooperativity"].get<double>(), 1471.6, 0.1);
    std::filesystem::remove_all(dir);
}

TEST(cli, reproduce_all_writes_manifest) {
    const auto dir = scratch("reproduce");
    const auto r = run({"reproduce", "--all", "--out-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto manifest = parse(r);
    EXPECT_TRUE(manifest["pass"].get<bool>());
    for (const auto& a : manifest["artifacts"]) {
        EXPECT_TRUE(std::filesystem::exists(dir / a["file"].get<std::string>()));
    }
    EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
    const auto again = run({"reproduce", "--all", "--out-dir", dir.string()});
    EXPECT_EQ(again.out, r.out);
    std::filesystem::remove_all(dir);
}

TEST(cli, reproduce_single_table) {
    const auto r = run({"reproduce", "--table", "consumption"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("provenance"), std::string::npos);
    EXPECT_EQ(run({"reproduce", "--table", "nope"}).code, 2);
}
