#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aqecc/combinatorics.hpp"

namespace aqecc {

enum class Model { HeisenbergSpinHalf, MotzkinSpinOne };

std::string_view to_string(Model model);
// Accepts "heisenberg" / "motzkin" (case-sensitive, as on the command line).
Model parse_model(std::string_view name);
int site_dimension(Model model);

// One codeword: the uniform superposition over the magnetization-m sector.
struct CodewordSpec {
    Model model = Model::HeisenbergSpinHalf;
    int N = 0;
    int m = 0;

    void validate() const;
};

struct CodeSpace {
    Model model = Model::HeisenbergSpinHalf;
    int N = 0;
    int d = 0;
    int k = 0;
    int spacing = 0;
    std::vector<int> magnetizations;

    CodewordSpec codeword(std::size_t i) const { return {model, N, magnetizations.at(i)}; }
};

// Diagonal of a d-site reduced density matrix in the sector basis
// {|h^d_r>} or {|g^d_r>}, indexed by r + d for r in [-d, d].
struct ReducedDensityMatrix {
    Model model = Model::HeisenbergSpinHalf;
    int d = 0;
    std::vector<double> weights;
    std::vector<double> log_weights;
    // True when the weights came from log-gamma arithmetic rather than exact
    // integer ratios.
    bool log_mode = false;

    double weight(int r) const;
    double log_weight(int r) const;
};

ReducedDensityMatrix schmidt_weights(const CodewordSpec& spec, int d, const CountOptions& options = {});

// sum_r |a_r - b_r|: the trace norm of the difference, without a factor 1/2.
double rdm_trace_distance(const ReducedDensityMatrix& a, const ReducedDensityMatrix& b);

// Magnetization ladder with spacing 2d+1 (Motzkin) or 2d+2 (Heisenberg) and
// 2^k + 1 rungs. Fails with CapacityError once max |m| exceeds
// capacity_factor * sqrt(N).
CodeSpace select_code_space(Model model, int N, int k, int d, double capacity_factor = 1.0);

struct ErrorExponent {
    double exponent = 0.0;
    bool valid = false;
};

// Exponent of N in the ground-space code error log^2 N / N^{1/2 - 5a/2 - b}
// for k = a log N, d = b log N.
ErrorExponent predicted_error_exponent(double a, double b);

struct ScalingPoint {
    int N = 0;
    double distance = 0.0;
};

std::vector<ScalingPoint> scaling_curve(Model model, int d, int m, int m_prime, std::span<const int> grid,
                                        const CountOptions& options = {}, unsigned threads = 1);

} // namespace aqecc
