#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <regex>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "scott/verify/campaign.hpp"

#ifndef SCOTT_CLI_PATH
#define SCOTT_CLI_PATH "scott"
#endif

namespace {

using namespace scott;
using clock_type = std::chrono::steady_clock;

struct criterion {
    int id;
    std::string suite;
    verify::options opt;
    double limit_s;
    // Extra conditions on a passing report; returns an empty string when met.
    std::string (*extra)(const verify::report&);
};

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string core_extra(const verify::report& r)
{
    const auto& o = r.observations;
    if (o.at("random_pairs").get<std::uint64_t>() < 1000)
        return "fewer than 1000 random pairs";
    if (o.at("exhaustive_structures_size_3") != 512)
        return "size-3 enumeration incomplete";
    if (o.at("digraph_count").at("sentences") != 16)
        return "digraph sentence count is not 16";
    return {};
}

std::string rigidity_extra(const verify::report& r)
{
    for (const auto& s : r.observations.at("searches"))
        if (s.at("kind") == "total" && s.at("counterexample") == verify::json{{"a", {"00"}}, {"b", {"10"}}, {"c", {"11"}}})
            return {};
    return "TOTAL(2) counterexample (00,10,11) not reported";
}

std::string reduction_extra(const verify::report& r)
{
    if (r.observations.at("branches_per_witness").get<std::size_t>() < 100)
        return "fewer than 100 sampled branches per witness";
    return {};
}

std::string comb_extra(const verify::report& r)
{
    if (r.observations.at("faithfulness_max_chains") != 3)
        return "faithfulness universe smaller than three chains";
    return {};
}

std::string no_extra(const verify::report&)
{
    return {};
}

struct run_result {
    int status = -1;
    std::string out;
};

run_result run_command(const std::string& cmd)
{
    run_result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

void line(bool pass, int id, const std::string& name, double secs, double limit, const std::string& detail)
{
    std::printf("%s  %2d %-14s %7.2f s (limit %4.0f s)  %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs, limit,
                detail.c_str());
    std::fflush(stdout);
}

} // namespace

int main()
{
    const std::size_t bound = core::default_oracle_bound;
    const std::vector<criterion> criteria{
        {1, "core-oracle", {7, 1000, bound}, 60, core_extra},
        {2, "ref-inject", {0, 1, bound}, 30, no_extra},
        {3, "ref-tree", {0, 1, bound}, 30, no_extra},
        {4, "ref-roundtrip", {0, 200, bound}, 60, no_extra},
        {5, "grp-rigidity", {1, 1, bound}, 60, rigidity_extra},
        {6, "grp-reduction", {0, 100, bound}, 120, reduction_extra},
        {7, "grp-k-coding", {0, 1, bound}, 30, no_extra},
        {8, "orbit-main", {0, 1, bound}, 120, no_extra},
        // Three 3-cycles make 9-element assemblies.
        {9, "comb-growth", {0, 1, 9}, 60, comb_extra},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = clock_type::now();
        std::string detail;
        bool pass = false;
        try {
            const auto r = verify::verify_campaign(c.suite, c.opt);
            const auto extra = c.extra(r);
            pass = r.passed() && extra.empty();
            detail = "cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failure_count);
            if (!extra.empty())
                detail += " (" + extra + ")";
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = seconds_since(t0);
        pass = pass && secs < c.limit_s;
        failed += pass ? 0 : 1;
        line(pass, c.id, c.suite, secs, c.limit_s, detail);
    }

    // Determinism: two CLI runs, byte-identical once wall-time fields are blanked.
    {
        const auto t0 = clock_type::now();
        const std::string cmd = std::string("'") + SCOTT_CLI_PATH + "' verify all --seed 0 --budget 100";
        const auto a = run_command(cmd), b = run_command(cmd);
        const double secs = seconds_since(t0);
        const std::regex wall("\"wall_time_ms\": [0-9]+");
        const bool same = std::regex_replace(a.out, wall, "") == std::regex_replace(b.out, wall, "");
        const bool pass = a.status == 0 && b.status == 0 && same && !a.out.empty() && secs < 300;
        failed += pass ? 0 : 1;
        line(pass, 10, "determinism", secs, 300,
             "exit=" + std::to_string(a.status) + "," + std::to_string(b.status) +
                 (same ? " reports identical" : " reports differ"));
    }
    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
