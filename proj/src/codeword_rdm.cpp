#include "aqecc/codeword_rdm.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "aqecc/detail/parallel.hpp"
#include "aqecc/errors.hpp"

namespace aqecc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exact counts for the numerator pieces never exceed the denominator, so they
// are computed without a digit budget once the denominator itself is exact.
BigInt exact_spin_half_count(int L, int m)
{
    if (std::abs(m) > L || (L - m) % 2 != 0)
        return BigInt(0);
    return exact_binomial(L, (L + m) / 2);
}

BigInt exact_spin_one_count(int L, int m)
{
    if (std::abs(m) > L)
        return BigInt(0);
    return *motzkin_sector_count(L, m, CountOptions{std::numeric_limits<int>::max()}).exact;
}

long double log_spin_half_count(int L, int m)
{
    if (std::abs(m) > L || (L - m) % 2 != 0)
        return -std::numeric_limits<long double>::infinity();
    return log_binomial(L, (L + m) / 2);
}

} // namespace

std::string_view to_string(Model model)
{
    switch (model) {
    case Model::HeisenbergSpinHalf:
        return "heisenberg";
    case Model::MotzkinSpinOne:
        return "motzkin";
    }
    return "unknown";
}

Model parse_model(std::string_view name)
{
    if (name == "heisenberg")
        return Model::HeisenbergSpinHalf;
    if (name == "motzkin")
        return Model::MotzkinSpinOne;
    throw DomainError("unknown model '" + std::string(name) + "' (expected heisenberg or motzkin)");
}

int site_dimension(Model model)
{
    return model == Model::HeisenbergSpinHalf ? 2 : 3;
}

void CodewordSpec::validate() const
{
    if (N < 1)
        throw RangeError("codeword: chain length must be positive");
    if (std::abs(m) > N)
        throw RangeError("codeword: |m| exceeds N");
    if (model == Model::HeisenbergSpinHalf && (N - m) % 2 != 0)
        throw ParityError("codeword: spin-1/2 magnetization must have the parity of N");
}

double ReducedDensityMatrix::weight(int r) const
{
    if (std::abs(r) > d)
        return 0.0;
    return weights[static_cast<std::size_t>(r + d)];
}

double ReducedDensityMatrix::log_weight(int r) const
{
    if (std::abs(r) > d)
        return kNegInf;
    return log_weights[static_cast<std::size_t>(r + d)];
}

ReducedDensityMatrix schmidt_weights(const CodewordSpec& spec, int d, const CountOptions& options)
{
    spec.validate();
    if (d < 1 || d >= spec.N)
        throw RangeError("schmidt_weights: support length must satisfy 1 <= d < N");

    const int N = spec.N;
    const int m = spec.m;
    const bool spin_half = spec.model == Model::HeisenbergSpinHalf;

    ReducedDensityMatrix rdm;
    rdm.model = spec.model;
    rdm.d = d;
    rdm.weights.assign(static_cast<std::size_t>(2 * d + 1), 0.0);
    rdm.log_weights.assign(static_cast<std::size_t>(2 * d + 1), kNegInf);

    const SectorCount total = spin_half ? heisenberg_sector_count(N, m, options) : motzkin_sector_count(N, m, options);
    rdm.log_mode = !total.exact.has_value();

    for (int r = -d; r <= d; ++r) {
        const auto slot = static_cast<std::size_t>(r + d);
        if (!rdm.log_mode) {
            const BigInt num = spin_half ? exact_spin_half_count(d, r) * exact_spin_half_count(N - d, m - r)
                                         : exact_spin_one_count(d, r) * exact_spin_one_count(N - d, m - r);
            if (num.is_zero())
                continue;
            rdm.weights[slot] = ratio_to_double(num, *total.exact);
            rdm.log_weights[slot] = static_cast<double>(log_of(num) - log_of(*total.exact));
        } else {
            const long double lw = spin_half
                ? log_spin_half_count(d, r) + log_spin_half_count(N - d, m - r) - log_spin_half_count(N, m)
                : log_motzkin_count(d, r) + log_motzkin_count(N - d, m - r) - log_motzkin_count(N, m);
            if (std::isinf(lw))
                continue;
            rdm.log_weights[slot] = static_cast<double>(lw);
            rdm.weights[slot] = static_cast<double>(std::exp(lw));
        }
    }
    return rdm;
}

double rdm_trace_distance(const ReducedDensityMatrix& a, const ReducedDensityMatrix& b)
{
    if (a.model != b.model || a.d != b.d)
        throw ShapeError("rdm_trace_distance: model or support length mismatch");

    double total = 0.0;
    for (std::size_t i = 0; i < a.log_weights.size(); ++i) {
        const double la = a.log_weights[i];
        const double lb = b.log_weights[i];
        if (std::isinf(la) && std::isinf(lb))
            continue;
        const double hi = std::max(la, lb);
        const double lo = std::min(la, lb);
        // |e^hi - e^lo| = e^hi (1 - e^{lo-hi}) without cancellation.
        total += std::exp(hi) * -std::expm1(lo - hi);
    }
    return total;
}

CodeSpace select_code_space(Model model, int N, int k, int d, double capacity_factor)
{
    if (k < 1)
        throw DomainError("select_code_space: k >= 1 required");
    if (d < 1)
        throw DomainError("select_code_space: d >= 1 required");
    if (N < 1)
        throw RangeError("select_code_space: chain length must be positive");
    if (k > 30)
        throw CapacityError("select_code_space: k too large");

    CodeSpace space;
    space.model = model;
    space.N = N;
    space.d = d;
    space.k = k;
    // A d-local operator shifts magnetization by at most 2d. Spin-1/2
    // magnetizations share the parity of N, so the spacing there is even.
    space.spacing = model == Model::MotzkinSpinOne ? 2 * d + 1 : 2 * d + 2;

    const long half = 1L << (k - 1);
    const long m_max = half * space.spacing;
    const long center = (model == Model::HeisenbergSpinHalf && N % 2 != 0) ? 1 : 0;
    const long reach = m_max + center;
    if (static_cast<double>(reach) > capacity_factor * std::sqrt(static_cast<double>(N)) || reach > N)
        throw CapacityError("select_code_space: ladder needs |m| up to " + std::to_string(reach)
                            + ", beyond the allowed " + std::to_string(capacity_factor) + "*sqrt(N)");

    for (long j = 0; j <= 2 * half; ++j)
        space.magnetizations.push_back(static_cast<int>(center - m_max + j * space.spacing));
    return space;
}

ErrorExponent predicted_error_exponent(double a, double b)
{
    ErrorExponent e;
    e.exponent = 0.5 - 2.5 * a - b;
    e.valid = a > 0.0 && b > 0.0 && e.exponent > 0.0;
    return e;
}

std::vector<ScalingPoint> scaling_curve(Model model, int d, int m, int m_prime, std::span<const int> grid,
                                        const CountOptions& options, unsigned threads)
{
    std::vector<ScalingPoint> out(grid.size());
    detail::parallel_for(grid.size(), threads, [&](std::size_t i) {
        const int N = grid[i];
        const auto a = schmidt_weights({model, N, m}, d, options);
        const auto b = schmidt_weights({model, N, m_prime}, d, options);
        out[i] = {N, rdm_trace_distance(a, b)};
    });
    return out;
}

} // namespace aqecc
