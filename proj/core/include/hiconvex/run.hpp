#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hiconvex {

/**
 * One CLI invocation, fully described. Sources marked *_src accept inline
 * JSON (first non-blank character '{' or '[') or a file path.
 */
struct RunConfig {
    std::string command;            // check | verify | order | falsify | matrix
    std::string ineq;               // bp|hh|fejer|weighted|nested|slope|hh1|res|rhh|mhh|hha|va|matrix
    std::string model_src;
    std::string measure_mu_src;
    std::string measure_nu_src;
    std::string matrices_src;       // JSON array of matrix objects
    std::string csv_src;
    std::string weight = "poly";    // poly | power | cosine
    std::optional<double> lo;       // --interval lo hi
    std::optional<double> hi;
    std::optional<double> alpha;
    std::optional<int> k;
    std::optional<double> tol;
    std::optional<double> epsilon;
    std::vector<double> points;     // explicit evaluation points
    std::uint64_t seed = 0;
    long trials = 1000;
    int order = 3;                  // for the check command
    std::string falsify_target = "freudenthal";
    std::string out_path;           // empty = the stream handed to run()
    bool no_meta = false;
};

/**
 * Executes the configured command and writes one JSON envelope:
 *   {"command","ineq","seed","inputs":{...},"report":{...}|"summary"+"report","meta":{...}}
 * Returns 0 when every verdict holds, 1 when any fails. Input and processing
 * errors are reported by throwing; the CLI maps them to exit code 2. Identical
 * config and seed produce byte-identical output when no_meta is set.
 */
int run(const RunConfig& config, std::ostream& out);

} // namespace hiconvex
