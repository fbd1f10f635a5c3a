#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mixdae/io.hpp"
#include "mixdae/msalg.hpp"
#include "mixdae/oracle.hpp"
#include "mixdae/relax.hpp"

namespace mixdae::pipeline {

struct Options {
    relax::DcMode dc = relax::DcMode::Auto;
    std::uint64_t seed = oracle::kDefaultSeed;
    bool with_index = false;
    int trials = 2;
};

// LM-ification step of the pipeline: keep an LM input, otherwise try the
// row-reclassification view, otherwise augment.
DaeSystem to_lm(const DaeSystem &input);

struct ReduceOutcome {
    DaeSystem lm_input; // the system the tightness loop ran on
    relax::TightenResult tight;
    assignment::DualSolution ms_dual;
    msalg::ReducedDae reduced;
    std::optional<int> degdet_estimate; // of lm_input
    std::optional<int> index_before;    // of the original system, on request
    std::uint64_t seed = 0;
};

ReduceOutcome run_reduce(const DaeSystem &input, const Options &opts);

struct CheckOutcome {
    int n = 0;
    int delta_hat = 0;
    bool tight = false;
    int rank = 0;
    int rank_q_minimizer = 0;
    int trank_t_minimizer = 0;
    std::vector<int> minimizer;
    std::optional<int> degdet_estimate;
    std::optional<int> index;
};

CheckOutcome run_check(const DaeSystem &input, const Options &opts);

// JSON emitters for the CLI.
std::string result_json(const ReduceOutcome &out);
std::string result_text(const ReduceOutcome &out);
std::string trace_json(const relax::TightenResult &tight, const DaeSystem &lm_system);
std::string check_text(const CheckOutcome &out);

} // namespace mixdae::pipeline
