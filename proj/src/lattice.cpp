#include "aqecc/lattice.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>

#include "aqecc/errors.hpp"

namespace aqecc {

Budget Budget::from_env()
{
    Budget b;
    if (const char* raw = std::getenv("AQECC_BUDGET_BYTES"); raw != nullptr && *raw != '\0') {
        const std::string_view text(raw);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
            throw FormatError("AQECC_BUDGET_BYTES must be a positive integer, got '" + std::string(text) + "'");
        b.max_bytes = value;
    }
    return b;
}

void Budget::require(std::size_t dimension, std::string_view what) const
{
    if (!admits(dimension))
        throw BudgetError(std::string(what) + ": dimension " + std::to_string(dimension) + " exceeds the budget of "
                          + std::to_string(max_dimension()) + " amplitudes (" + std::to_string(max_bytes)
                          + " bytes; set AQECC_BUDGET_BYTES to raise it)");
}

std::size_t ipow(std::size_t base, int exponent)
{
    std::size_t result = 1;
    for (int i = 0; i < exponent; ++i) {
        if (result > std::numeric_limits<std::size_t>::max() / base)
            return std::numeric_limits<std::size_t>::max();
        result *= base;
    }
    return result;
}

ChainBasis::ChainBasis(int site_dim, int num_sites) : site_dim_(site_dim), num_sites_(num_sites)
{
    if (site_dim != 2 && site_dim != 3)
        throw ShapeError("site dimension must be 2 or 3");
    if (num_sites < 1)
        throw RangeError("chain needs at least one site");
    dimension_ = ipow(static_cast<std::size_t>(site_dim), num_sites);
    if (dimension_ == std::numeric_limits<std::size_t>::max())
        throw BudgetError("chain basis dimension overflows");
    place_.resize(static_cast<std::size_t>(num_sites));
    std::size_t p = 1;
    for (int s = num_sites - 1; s >= 0; --s) {
        place_[static_cast<std::size_t>(s)] = p;
        p *= static_cast<std::size_t>(site_dim);
    }
}

int ChainBasis::magnetization(std::size_t index) const
{
    int m = 0;
    for (int s = num_sites_ - 1; s >= 0; --s) {
        m += spin_value(static_cast<int>(index % static_cast<std::size_t>(site_dim_)));
        index /= static_cast<std::size_t>(site_dim_);
    }
    return m;
}

std::size_t ChainBasis::translate(std::size_t index) const
{
    // Shifting every digit one place less significant moves site j to j+1;
    // the least significant digit (last site) becomes the leading one.
    const auto d = static_cast<std::size_t>(site_dim_);
    const std::size_t last = index % d;
    return index / d + last * place_[0];
}

std::vector<int> ChainBasis::support_sites(int start, int length) const
{
    if (length < 1 || length > num_sites_)
        throw ShapeError("support length must lie in [1, N]");
    std::vector<int> sites(static_cast<std::size_t>(length));
    for (int t = 0; t < length; ++t)
        sites[static_cast<std::size_t>(t)] = ((start % num_sites_) + num_sites_ + t) % num_sites_;
    return sites;
}

namespace {

struct LocalLayout {
    std::vector<std::size_t> offsets; // full-index contribution of local index b
    std::vector<std::size_t> local_place;
};

LocalLayout make_layout(const ChainBasis& basis, std::span<const int> sites)
{
    const int len = static_cast<int>(sites.size());
    for (std::size_t a = 0; a < sites.size(); ++a) {
        if (sites[a] < 0 || sites[a] >= basis.num_sites())
            throw ShapeError("site index out of range");
        for (std::size_t b = a + 1; b < sites.size(); ++b)
            if (sites[a] == sites[b])
                throw ShapeError("support visits a site twice");
    }
    LocalLayout layout;
    const auto D = static_cast<std::size_t>(basis.site_dim());
    const std::size_t local_dim = ipow(D, len);
    layout.local_place.resize(sites.size());
    std::size_t p = 1;
    for (int t = len - 1; t >= 0; --t) {
        layout.local_place[static_cast<std::size_t>(t)] = p;
        p *= D;
    }
    layout.offsets.resize(local_dim);
    for (std::size_t b = 0; b < local_dim; ++b) {
        std::size_t off = 0;
        for (std::size_t t = 0; t < sites.size(); ++t)
            off += ((b / layout.local_place[t]) % D) * basis.place(sites[t]);
        layout.offsets[b] = off;
    }
    return layout;
}

std::size_t local_index(const ChainBasis& basis, std::span<const int> sites, const LocalLayout& layout,
                        std::size_t index)
{
    std::size_t a = 0;
    for (std::size_t t = 0; t < sites.size(); ++t)
        a += static_cast<std::size_t>(basis.digit(index, sites[t])) * layout.local_place[t];
    return a;
}

} // namespace

void apply_local(const ChainBasis& basis, std::span<const int> sites, const Eigen::MatrixXcd& matrix,
                 const Eigen::VectorXcd& in, Eigen::VectorXcd& out)
{
    const LocalLayout layout = make_layout(basis, sites);
    const auto local_dim = static_cast<Eigen::Index>(layout.offsets.size());
    if (matrix.rows() != local_dim || matrix.cols() != local_dim)
        throw ShapeError("local matrix does not match its support");
    if (in.size() != static_cast<Eigen::Index>(basis.dimension()) || out.size() != in.size())
        throw ShapeError("state length does not match the chain basis");

    // Column sparsity of the local matrix.
    std::vector<std::vector<Eigen::Index>> rows_of(static_cast<std::size_t>(local_dim));
    for (Eigen::Index a = 0; a < local_dim; ++a)
        for (Eigen::Index b = 0; b < local_dim; ++b)
            if (matrix(b, a) != cplx(0.0, 0.0))
                rows_of[static_cast<std::size_t>(a)].push_back(b);

    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const cplx amp = in[static_cast<Eigen::Index>(i)];
        if (amp == cplx(0.0, 0.0))
            continue;
        const std::size_t a = local_index(basis, sites, layout, i);
        const std::size_t base = i - layout.offsets[a];
        for (Eigen::Index b : rows_of[a])
            out[static_cast<Eigen::Index>(base + layout.offsets[static_cast<std::size_t>(b)])]
                += matrix(b, static_cast<Eigen::Index>(a)) * amp;
    }
}

void embed_local(const ChainBasis& basis, std::span<const int> sites, const Eigen::MatrixXcd& matrix,
                 std::vector<Eigen::Triplet<cplx>>& triplets)
{
    const LocalLayout layout = make_layout(basis, sites);
    const auto local_dim = static_cast<Eigen::Index>(layout.offsets.size());
    if (matrix.rows() != local_dim || matrix.cols() != local_dim)
        throw ShapeError("local matrix does not match its support");
    std::vector<std::vector<Eigen::Index>> rows_of(static_cast<std::size_t>(local_dim));
    for (Eigen::Index a = 0; a < local_dim; ++a)
        for (Eigen::Index b = 0; b < local_dim; ++b)
            if (matrix(b, a) != cplx(0.0, 0.0))
                rows_of[static_cast<std::size_t>(a)].push_back(b);

    for (std::size_t i = 0; i < basis.dimension(); ++i) {
        const std::size_t a = local_index(basis, sites, layout, i);
        const std::size_t base = i - layout.offsets[a];
        for (Eigen::Index b : rows_of[a])
            triplets.emplace_back(static_cast<Eigen::Index>(base + layout.offsets[static_cast<std::size_t>(b)]),
                                  static_cast<Eigen::Index>(i), matrix(b, static_cast<Eigen::Index>(a)));
    }
}

SiteSplit::SiteSplit(const ChainBasis& basis, std::span<const int> sites) : full_dim_(basis.dimension())
{
    const LocalLayout layout = make_layout(basis, sites);
    local_dim_ = layout.offsets.size();
    env_dim_ = full_dim_ / local_dim_;
    table_.resize(full_dim_);
    std::vector<bool> in_support(static_cast<std::size_t>(basis.num_sites()), false);
    for (int s : sites)
        in_support[static_cast<std::size_t>(s)] = true;
    const auto D = static_cast<std::size_t>(basis.site_dim());
    for (std::size_t i = 0; i < full_dim_; ++i) {
        std::size_t e = 0;
        for (int s = 0; s < basis.num_sites(); ++s)
            if (!in_support[static_cast<std::size_t>(s)])
                e = e * D + static_cast<std::size_t>(basis.digit(i, s));
        table_[local_index(basis, sites, layout, i) * env_dim_ + e] = i;
    }
}

Eigen::MatrixXcd SiteSplit::reduce(const Eigen::VectorXcd& psi) const
{
    if (psi.size() != static_cast<Eigen::Index>(full_dim_))
        throw ShapeError("state length does not match the chain basis");
    Eigen::MatrixXcd amplitudes(static_cast<Eigen::Index>(local_dim_), static_cast<Eigen::Index>(env_dim_));
    for (std::size_t a = 0; a < local_dim_; ++a)
        for (std::size_t e = 0; e < env_dim_; ++e)
            amplitudes(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(e))
                = psi[static_cast<Eigen::Index>(table_[a * env_dim_ + e])];
    return amplitudes * amplitudes.adjoint();
}

Eigen::MatrixXcd SiteSplit::reduce(const Eigen::MatrixXcd& rho) const
{
    const auto dim = static_cast<Eigen::Index>(full_dim_);
    if (rho.rows() != dim || rho.cols() != dim)
        throw ShapeError("density matrix does not match the chain basis");
    const auto ld = static_cast<Eigen::Index>(local_dim_);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ld, ld);
    for (std::size_t a = 0; a < local_dim_; ++a)
        for (std::size_t b = 0; b < local_dim_; ++b) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < env_dim_; ++e)
                acc += rho(static_cast<Eigen::Index>(table_[a * env_dim_ + e]),
                           static_cast<Eigen::Index>(table_[b * env_dim_ + e]));
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    return out;
}

Eigen::MatrixXcd reduce_pure(const ChainBasis& basis, const Eigen::VectorXcd& psi, std::span<const int> sites)
{
    return SiteSplit(basis, sites).reduce(psi);
}

Eigen::MatrixXcd reduce_dense(const ChainBasis& basis, const Eigen::MatrixXcd& rho, std::span<const int> sites)
{
    return SiteSplit(basis, sites).reduce(rho);
}

Eigen::MatrixXcd pauli_x()
{
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Eigen::MatrixXcd pauli_y()
{
    // Digit order is (down, up).
    Eigen::MatrixXcd m(2, 2);
    m << cplx(0.0, 0.0), cplx(0.0, 1.0), cplx(0.0, -1.0), cplx(0.0, 0.0);
    return m;
}

Eigen::MatrixXcd pauli_z()
{
    return spin_z(2);
}

Eigen::MatrixXcd spin_z(int site_dim)
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(site_dim, site_dim);
    for (int a = 0; a < site_dim; ++a)
        m(a, a) = site_dim == 2 ? 2.0 * a - 1.0 : a - 1.0;
    return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double trace_norm(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().sum();
}

double operator_norm(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

} // namespace aqecc
