#pragma once

#include "gptk/theory.hpp"

#include <array>
#include <cstdio>
#include <random>
#include <string>

inline std::string fixture(const std::string& name) {
    return std::string(GPTK_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI binary with the given argument string, capturing stdout.
inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(GPTK_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.output.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// Random rational in [0, 1] with denominator up to max_den.
inline gptk::Rational random_rational(std::mt19937_64& gen, int max_den = 12) {
    std::uniform_int_distribution<int> den_dist(1, max_den);
    int den = den_dist(gen);
    std::uniform_int_distribution<int> num_dist(0, den);
    return gptk::Rational(num_dist(gen), den);
}

// Random distribution over n outcomes.
inline gptk::Vec random_distribution(std::mt19937_64& gen, int n, int max_den = 12) {
    gptk::Vec d;
    gptk::Rational left = 1;
    for (int o = 0; o < n - 1; ++o) {
        gptk::Rational p = random_rational(gen) * left;
        d.push_back(p);
        left -= p;
    }
    d.push_back(left);
    return d;
}

// Random regular theory: one eigenstate per (measurement, outcome), with
// fresh random distributions on the other measurements.
inline gptk::Theory random_regular_theory(std::mt19937_64& gen, int m, int n) {
    gptk::Theory t;
    for (int j = 0; j < m; ++j)
        t.measurements.push_back({"M" + std::to_string(j + 1), n});
    for (int j = 0; j < m; ++j)
        for (int o = 0; o < n; ++o) {
            gptk::PureState s;
            s.name = "M" + std::to_string(j + 1) + "=" + std::to_string(o);
            for (int k = 0; k < m; ++k) {
                if (k == j) {
                    gptk::Vec d(static_cast<std::size_t>(n), gptk::Rational(0));
                    d[static_cast<std::size_t>(o)] = 1;
                    s.dists.push_back(std::move(d));
                } else {
                    s.dists.push_back(random_distribution(gen, n));
                }
            }
            t.pure_states.push_back(std::move(s));
            t.eigenstates[{t.measurements[static_cast<std::size_t>(j)].name, o}] =
                t.pure_states.back().name;
        }
    return t;
}
