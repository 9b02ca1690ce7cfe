#include "mahler/periodic.hpp"

#include <optional>
#include <sstream>

#include "mahler/errors.hpp"

namespace mahler {

PeriodicSeq::PeriodicSeq(std::vector<AlgebraicInput> period_values)
    : values_(std::move(period_values)) {
    if (values_.empty()) throw InputError("periodic sequence needs at least one entry");
}

const AlgebraicInput& PeriodicSeq::term(long h) const {
    if (h < 0) throw DomainError("sequence index must be non-negative");
    return values_[static_cast<std::size_t>(h) % values_.size()];
}

bool PeriodicSeq::is_constant() const {
    for (const auto& v : values_)
        if (v != values_[0]) return false;
    return true;
}

bool PeriodicSeq::is_identically_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

PeriodicSeq PeriodicSeq::stretch(unsigned j) const {
    if (j == 0) throw DomainError("stretch factor must be >= 1");
    if (j == 1) return *this;
    std::vector<AlgebraicInput> out;
    out.reserve(values_.size() * j);
    for (const auto& v : values_) {
        out.push_back(v);
        for (unsigned i = 1; i < j; ++i) out.push_back(AlgebraicInput(0L));
    }
    return PeriodicSeq(std::move(out));
}

PeriodicSeq PeriodicSeq::rotated() const {
    std::vector<AlgebraicInput> out(values_.begin() + 1, values_.end());
    out.push_back(values_[0]);
    return PeriodicSeq(std::move(out));
}

bool PeriodicSeq::operator==(const PeriodicSeq& o) const { return values_ == o.values_; }

nlohmann::ordered_json PeriodicSeq::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& v : values_) arr.push_back(v.to_json());
    return arr;
}

PeriodicSeq PeriodicSeq::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("periodic sequence must be a JSON array");
    std::vector<AlgebraicInput> vals;
    for (const auto& e : j) vals.push_back(AlgebraicInput::from_json(e));
    return PeriodicSeq(std::move(vals));
}

std::string PeriodicSeq::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) os << ",";
        os << values_[i].to_string();
    }
    os << ")";
    return os.str();
}

PeriodicSeq interleave(const PeriodicSeq& seq, unsigned j) { return seq.stretch(j); }

std::vector<BigComplex> dft_decompose(const PeriodicSeq& combined, long N,
                                      const PrecisionContext& ctx) {
    if (N <= 0 || N % static_cast<long>(combined.period()) != 0)
        throw PeriodMismatchError("sequence period " + std::to_string(combined.period()) +
                                  " does not divide N = " + std::to_string(N));
    // A_i = (1/N) * sum_h term(h) * omega^(-i*h)
    std::vector<BigComplex> terms;
    terms.reserve(N);
    for (long h = 0; h < N; ++h) terms.push_back(embed(combined.term(h), ctx));
    std::vector<BigComplex> out;
    out.reserve(N);
    BigComplex invN = div(BigComplex::from_long(1, ctx.working_bits),
                          BigComplex::from_long(N, ctx.working_bits));
    for (long i = 0; i < N; ++i) {
        BigComplex acc = BigComplex::zero(ctx.working_bits);
        for (long h = 0; h < N; ++h) {
            // omega^(-i*h) = e^(2 pi i * (-i*h)/N)
            BigComplex w = root_of_unity_numeric(N, -(i * h) % N, ctx);
            acc = add(acc, mul(terms[static_cast<std::size_t>(h)], w));
        }
        out.push_back(mul(acc, invN));
    }
    return out;
}

namespace {

// The exact field that covers every entry of every sequence, or nullopt for
// all-rational input; distinct quadratic fields cannot be joined.
std::optional<long> common_field(const std::vector<PeriodicSeq>& seqs) {
    std::optional<long> d;
    for (const auto& s : seqs)
        for (const auto& v : s.values()) {
            auto dv = v.field_d();
            if (!dv) continue;
            if (d && *d != *dv) throw FieldMismatchError();
            d = dv;
        }
    return d;
}

}  // namespace

int rank_exact(const std::vector<PeriodicSeq>& seqs, long num_terms) {
    if (seqs.empty()) return 0;
    if (num_terms <= 0) throw DomainError("rank_exact needs num_terms >= 1");
    auto d = common_field(seqs);

    // Build the matrix over the joined field and run fraction-free-by-field
    // Gaussian elimination with first-nonzero pivoting.
    std::size_t rows = seqs.size(), cols = static_cast<std::size_t>(num_terms);
    std::vector<std::vector<AlgebraicInput>> m(rows, std::vector<AlgebraicInput>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = seqs[i].term(static_cast<long>(j));
    (void)d;  // coercion happens inside the AlgebraicInput arithmetic

    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if (m[i][col].is_zero()) continue;
            AlgebraicInput f = div(m[i][col], m[row][col]);
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = sub(m[i][j], mul(f, m[row][j]));
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace mahler
