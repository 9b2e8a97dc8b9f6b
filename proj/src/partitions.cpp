#include "gptlab/partitions.hpp"

#include <numeric>
#include <sstream>

namespace gptlab {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw std::invalid_argument("partition: empty");
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i] < parts[i + 1])
            throw std::invalid_argument("partition: parts must be non-increasing");
    if (parts.back() < 0) throw std::invalid_argument("partition: negative part");
}

int Partition::size() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

std::string Partition::str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < parts.size(); ++i)
        os << parts[i] << (i + 1 < parts.size() ? "," : "");
    os << ']';
    return os.str();
}

std::string DynkinLabel::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < coeffs.size(); ++i)
        os << coeffs[i] << (i + 1 < coeffs.size() ? "," : "");
    os << ')';
    return os.str();
}

DynkinLabel dynkin_of(const Partition& lambda) {
    DynkinLabel l;
    for (int i = 0; i + 1 < lambda.num_parts(); ++i)
        l.coeffs.push_back(lambda.parts[i] - lambda.parts[i + 1]);
    return l;
}

std::int64_t dimension_formula(int d, int j) {
    if (d < 2) throw std::invalid_argument("dimension_formula: d >= 2 required");
    if (j < 0) throw std::invalid_argument("dimension_formula: j >= 0 required");
    if (j == 0) return 1;
    Rational dim = Rational(2 * j, d - 1) + 1;
    for (int k = 1; k <= d - 2; ++k) {
        Rational f = Rational(j, k) + 1;
        dim *= f * f;
    }
    if (dim.denominator() != 1)
        throw std::logic_error("dimension_formula: non-integer result");
    return dim.numerator();
}

Partition highest_weight_partition(int d, int j) {
    std::vector<int> p(d, j);
    p.front() = 2 * j;
    p.back() = 0;
    return Partition(std::move(p));
}

std::vector<Partition> interlacings(const Partition& lambda) {
    const int n = lambda.num_parts();
    std::vector<Partition> out;
    std::vector<int> mu(n - 1);
    // mu_i ranges over [lambda_{i+1}, lambda_i]; descending loop order per
    // index gives lexicographic output directly.
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n - 1) {
            out.emplace_back(mu);
            return;
        }
        int hi = lambda.parts[i];
        int lo = lambda.parts[i + 1];
        if (i > 0) hi = std::min(hi, mu[i - 1]);
        for (int v = hi; v >= lo; --v) {
            mu[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        return a.parts < b.parts;
    });
    return out;
}

bool interlaces(const Partition& mu, const Partition& lambda) {
    if (mu.num_parts() != lambda.num_parts() - 1) return false;
    for (int i = 0; i < mu.num_parts(); ++i) {
        if (!(lambda.parts[i] >= mu.parts[i] &&
              mu.parts[i] >= lambda.parts[i + 1]))
            return false;
    }
    return true;
}

Rational u1_charge(const Partition& lambda, const Partition& mu) {
    if (!interlaces(mu, lambda))
        throw std::invalid_argument("u1_charge: mu does not interlace lambda");
    const int d = lambda.num_parts();
    return Rational(lambda.size()) - Rational(d, d - 1) * mu.size();
}

std::int64_t su_dim(const Partition& mu) {
    const int n = mu.num_parts();
    Rational dim = 1;
    for (int i = 0; i < n; ++i)
        for (int p = i + 1; p < n; ++p)
            dim *= Rational(mu.parts[i] - mu.parts[p] + p - i, p - i);
    if (dim.denominator() != 1)
        throw std::logic_error("su_dim: non-integer result");
    return dim.numerator();
}

std::vector<BranchBlock> branch_blocks(int d, int j) {
    if (d < 3) throw std::invalid_argument("branch_blocks: d >= 3 required");
    const Partition lambda = highest_weight_partition(d, j);
    std::vector<BranchBlock> out;
    for (const Partition& mu : interlacings(lambda)) {
        BranchBlock b;
        b.mu = mu;
        b.u1_charge = u1_charge(lambda, mu);
        b.su_dim = su_dim(mu);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<DynkinLabel> branch_zero_charge(int d, int j) {
    if (d < 3) throw std::invalid_argument("branch_zero_charge: d >= 3 required");
    if (j < 1) throw std::invalid_argument("branch_zero_charge: j >= 1 required");
    std::vector<DynkinLabel> out;
    for (const BranchBlock& b : branch_blocks(d, j))
        if (b.u1_charge == Rational(0)) out.push_back(dynkin_of(b.mu));
    return out;
}

}  // namespace gptlab
