// SPDX-License-Identifier: Apache-2.0
//
// eadf: conventional and enhanced effective aperture distribution function
// characterization of antenna arrays
// Copyright (C) 2026 the eadf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace
{
    // Directory shared by the CLI cases of one test-binary run; simulate once,
    // characterize and evaluate against the same container
    fs::path work_dir()
    {
        static fs::path dir = [] {
            fs::path d = fs::temp_directory_path() / ("eadf_cli_" + std::to_string(::getpid()));
            fs::create_directories(d);
            return d;
        }();
        return dir;
    }

    // Run the CLI with the given arguments; stdout and stderr land in
    // work_dir()/stdout.txt and stderr.txt
    int run_cli(const std::string &args)
    {
        std::string cmd = std::string("\"") + EADF_CLI_PATH + "\" " + args + " > \"" +
                          (work_dir() / "stdout.txt").string() + "\" 2> \"" + (work_dir() / "stderr.txt").string() +
                          "\"";
        int status = std::system(cmd.c_str());
        if (status == -1)
            return -1;
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string last_stdout()
    {
        return slurp(work_dir() / "stdout.txt");
    }
    std::string last_stderr()
    {
        return slurp(work_dir() / "stderr.txt");
    }

    // Small campaign: two elements, 9-point sweep, 15-degree grid
    fs::path tiny_config()
    {
        fs::path cfg = work_dir() / "tiny.toml";
        if (!fs::exists(cfg))
            std::ofstream(cfg) << "seed = 11\n"
                                  "snr_db = 70.0\n"
                                  "[grid]\n"
                                  "zenith_half_order = 12\n"
                                  "azimuth_half_order = 12\n"
                                  "[sweep]\n"
                                  "start_hz = 27.0e9\n"
                                  "stop_hz = 28.6e9\n"
                                  "points = 9\n"
                                  "[[elements]]\n"
                                  "pattern = \"patch\"\n"
                                  "patch_order = 2\n"
                                  "position_m = [0.0, 0.0, 0.03]\n"
                                  "delta_tau_ns = 1.0\n"
                                  "[[elements]]\n"
                                  "pattern = \"omni\"\n"
                                  "position_m = [0.004, -0.002, 0.01]\n"
                                  "delta_tau_ns = 0.5\n";
        return cfg;
    }
} // namespace

TEST_CASE("simulate writes a pattern container")
{
    auto out = work_dir() / "sim";
    int rc = run_cli("simulate --config \"" + tiny_config().string() + "\" --out \"" + out.string() + "\"");
    CHECK(rc == 0);
    CHECK(fs::exists(out / "patterns.json"));
    CHECK(fs::exists(out / "patterns.bin"));
    CHECK(last_stdout().find("Simulated 2 element(s), 9 frequency point(s)") != std::string::npos);
}

TEST_CASE("simulation output is byte-deterministic")
{
    auto out_a = work_dir() / "det_a", out_b = work_dir() / "det_b";
    REQUIRE(run_cli("simulate --config \"" + tiny_config().string() + "\" --out \"" + out_a.string() + "\"") == 0);
    REQUIRE(run_cli("simulate --config \"" + tiny_config().string() + "\" --out \"" + out_b.string() + "\"") == 0);
    CHECK(slurp(out_a / "patterns.bin") == slurp(out_b / "patterns.bin"));
    CHECK(slurp(out_a / "patterns.json") == slurp(out_b / "patterns.json"));

    // A different seed changes the noise
    auto out_c = work_dir() / "det_c";
    REQUIRE(run_cli("simulate --config \"" + tiny_config().string() + "\" --seed 999 --out \"" + out_c.string() +
                    "\"") == 0);
    CHECK(slurp(out_a / "patterns.bin") != slurp(out_c / "patterns.bin"));

    // Noiseless runs strip the noise no matter the seed
    auto out_d = work_dir() / "det_d", out_e = work_dir() / "det_e";
    REQUIRE(run_cli("simulate --config \"" + tiny_config().string() + "\" --noiseless --out \"" + out_d.string() +
                    "\"") == 0);
    REQUIRE(run_cli("simulate --config \"" + tiny_config().string() + "\" --noiseless --seed 999 --out \"" +
                    out_e.string() + "\"") == 0);
    CHECK(slurp(out_d / "patterns.bin") == slurp(out_e / "patterns.bin"));
    CHECK(slurp(out_a / "patterns.bin") != slurp(out_d / "patterns.bin"));
}

TEST_CASE("validate passes a complete container")
{
    auto sim = work_dir() / "sim";
    REQUIRE(fs::exists(sim / "patterns.json"));
    int rc = run_cli("validate --input \"" + (sim / "patterns.json").string() + "\"");
    CHECK(rc == 0);
    CHECK(last_stdout().find("No findings") != std::string::npos);
}

TEST_CASE("characterize in enhanced mode writes model, centers, spectra and delay maps")
{
    auto sim = work_dir() / "sim";
    auto out = work_dir() / "chr";
    int rc = run_cli("characterize --input \"" + (sim / "patterns.json").string() + "\" --out \"" + out.string() +
                     "\" --mode enhanced --spectra --delay-maps");
    CHECK(rc == 0);
    CHECK(fs::exists(out / "model.json"));
    CHECK(fs::exists(out / "model.bin"));
    CHECK(fs::exists(out / "phase_centers.json"));
    CHECK(fs::exists(out / "spectrum_e0_V.csv"));
    CHECK(fs::exists(out / "spectrum_e1_V.csv"));
    CHECK(fs::exists(out / "delay_map_e0.csv"));
    CHECK(fs::exists(out / "delay_map_e1.csv"));
    CHECK(last_stdout().find("enhanced, 2 element(s)") != std::string::npos);

    // The recovered phase centers sit close to the configured positions
    auto centers = nlohmann::json::parse(slurp(out / "phase_centers.json"));
    REQUIRE(centers.at("elements").size() == 2);
    const auto &e0 = centers.at("elements").at(0);
    CHECK(e0.at("element_id").get<int>() == 0);
    CHECK(std::abs(e0.at("offset_m").at(2).get<double>() - 0.03) < 1e-4);
    CHECK(std::abs(e0.at("delta_tau_ns").get<double>() - 1.0) < 1e-3);
}

TEST_CASE("characterize in conventional mode with a coarser step")
{
    auto sim = work_dir() / "sim";
    auto out = work_dir() / "chr_conv";
    int rc = run_cli("characterize --input \"" + (sim / "patterns.json").string() + "\" --out \"" + out.string() +
                     "\" --mode conventional --step 30");
    CHECK(rc == 0);
    CHECK(fs::exists(out / "model.json"));
    CHECK_FALSE(fs::exists(out / "phase_centers.json")); // conventional carries no centers
    CHECK(last_stdout().find("conventional, 2 element(s), build grid 7 x 12") != std::string::npos);
}

TEST_CASE("characterize rejects an inadmissible step")
{
    auto sim = work_dir() / "sim";
    auto out = work_dir() / "chr_bad";
    int rc = run_cli("characterize --input \"" + (sim / "patterns.json").string() + "\" --out \"" + out.string() +
                     "\" --mode enhanced --step 40");
    CHECK(rc == 1);
    auto err = last_stderr();
    CHECK(err.find("error:") != std::string::npos);
    CHECK(err.find("admissible steps") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "model.json"));
}

TEST_CASE("evaluate reports per-element errors and a pooled summary")
{
    auto sim = work_dir() / "sim";
    auto chr = work_dir() / "chr";
    auto out = work_dir() / "eval";
    int rc = run_cli("evaluate --truth \"" + (sim / "patterns.json").string() + "\" --model \"" +
                     (chr / "model.json").string() + "\" --out \"" + out.string() + "\" --include-build-directions");
    CHECK(rc == 0);
    CHECK(fs::exists(out / "rem_e0_V.csv"));
    CHECK(fs::exists(out / "rem_e0_V.json"));
    CHECK(fs::exists(out / "rem_e1_V.csv"));
    CHECK(fs::exists(out / "summary.json"));
    auto text = last_stdout();
    CHECK(text.find("rem_e0_V: median") != std::string::npos);
    CHECK(text.find("pooled V: median") != std::string::npos);

    // Same grid, build directions included, 70 dB SNR: the model reproduces
    // the container almost exactly, so the pooled median sits far down
    auto summary = slurp(out / "summary.json");
    CHECK(summary.find("\"median_db\": -") != std::string::npos);
}

TEST_CASE("budget from an explicit offset")
{
    // Offset [0.03, 0.04, 0.12] at a 1 cm wavelength: 13 cyc/rad in zenith,
    // 5 cyc/rad in azimuth
    int rc = run_cli("budget --offset 0.03 0.04 0.12 --frequency 29979245800");
    CHECK(rc == 0);
    auto text = last_stdout();
    CHECK(text.find("f_zenith 13 cyc/rad") != std::string::npos);
    CHECK(text.find("f_azimuth 5 cyc/rad") != std::string::npos);

    CHECK(run_cli("budget --offset 0.01 0.0 0.0") == 1); // frequency required
    CHECK(last_stderr().find("error:") != std::string::npos);
}

TEST_CASE("budget from a chamber config covers all elements")
{
    auto json_path = work_dir() / "budget.json";
    int rc = run_cli("budget --config \"" + tiny_config().string() + "\" --json \"" + json_path.string() + "\"");
    CHECK(rc == 0);
    auto text = last_stdout();
    CHECK(text.find("element 0:") != std::string::npos);
    CHECK(text.find("element 1:") != std::string::npos);
    CHECK(text.find("array:") != std::string::npos);
    CHECK(fs::exists(json_path));
    CHECK(slurp(json_path).find("\"format\": \"eadf-budget\"") != std::string::npos);
}

TEST_CASE("missing inputs fail with a clear error")
{
    CHECK(run_cli("simulate --config /nonexistent.toml --out /tmp/eadf_nowhere") == 1);
    CHECK(last_stderr().find("error:") != std::string::npos);

    CHECK(run_cli("characterize") != 0); // required options missing
    CHECK(run_cli("nonsense") != 0);
}
