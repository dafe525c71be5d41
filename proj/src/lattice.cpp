#include "singtheta/lattice.hpp"

#include <numeric>
#include <sstream>

#include "singtheta/errors.hpp"

namespace singtheta {

namespace {

MatQ half_form(const HalfIntegralForm& s) {
    MatQ m = to_q(s.doubled_matrix());
    for (auto& v : m.a) v /= 2;
    return m;
}

LatticeBasis make_basis(const HalfIntegralForm& s, const MatQ& columns) {
    mpz_class lambda;
    MatZ scaled = clear_denominators(columns, lambda);
    MatZ h = lattice_hnf(scaled);
    MatQ basis = to_q(h);
    for (auto& v : basis.a) { v /= mpq_class(lambda); v.canonicalize(); }
    MatQ gram = mul(mul(transpose(basis), half_form(s)), basis);
    LatticeBasis lb{s, std::move(basis), std::move(gram)};
    if (!is_integral(inverse(lb.basis)))
        throw input_error("lattice does not contain Z^m");
    return lb;
}

std::vector<mpz_class> q_part(const std::vector<mpz_class>& divisors, const mpz_class& q) {
    std::vector<mpz_class> parts;
    for (const auto& d : divisors) {
        mpz_class part(1), rest = d;
        while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
            rest /= q;
            part *= q;
        }
        if (part > 1) parts.push_back(part);
    }
    return parts;
}

std::vector<i64> prime_factors(i64 n) {
    std::vector<i64> ps;
    for (i64 q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            ps.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

} // namespace

mpz_class LatticeBasis::index_over_std() const {
    mpq_class d = det(basis);
    mpq_class idx = 1 / abs(d);
    idx.canonicalize();
    if (idx.get_den() != 1) throw input_error("lattice index is not integral");
    return idx.get_num();
}

LatticeBasis lattice_from_generators(const HalfIntegralForm& s, const MatQ& gens) {
    const int m = s.size();
    if (gens.rows != m) throw input_error("lattice_from_generators: row count mismatch");
    // always include the standard basis so that Z^m is contained
    MatQ cols(m, gens.cols + m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < gens.cols; ++j) cols(i, j) = gens(i, j);
    for (int i = 0; i < m; ++i) cols(i, gens.cols + i) = 1;
    return make_basis(s, cols);
}

LatticeBasis dual_lattice(const HalfIntegralForm& s) {
    if (!s.is_positive_definite())
        throw input_error("dual_lattice: form must be positive definite");
    return make_basis(s, inverse(to_q(s.doubled_matrix())));
}

LatticeBasis kitaoka_partner(const HalfIntegralForm& s, i64 d) {
    const i64 n = s.level();
    if (d < 1 || n % d != 0)
        throw input_error("kitaoka_partner: d must divide level(S)");
    const i64 c = n / d;
    if (std::gcd(d, c) != 1)
        throw input_error("kitaoka_partner: level divisor must satisfy gcd(d, N/d) = 1");
    MatQ dual = inverse(to_q(s.doubled_matrix()));
    for (auto& v : dual.a) { v *= c; v.canonicalize(); }
    LatticeBasis lb = lattice_from_generators(s, dual);
    LocalCheck chk = partner_local_check(s, d, lb);
    if (!chk.ok)
        throw input_error("kitaoka_partner: local characterization failed: " + chk.detail);
    return lb;
}

LocalCheck partner_local_check(const HalfIntegralForm& s, i64 d, const LatticeBasis& partner) {
    // change of basis from the partner down to Z^m; integral because
    // Z^m is contained in the partner lattice
    MatQ binv_q = inverse(partner.basis);
    if (!is_integral(binv_q)) return {false, "Z^m not contained in partner lattice"};
    MatZ binv(binv_q.rows, binv_q.cols);
    for (size_t i = 0; i < binv_q.a.size(); ++i) binv.a[i] = binv_q.a[i].get_num();

    std::vector<mpz_class> quot = smith_divisors(binv);
    std::vector<mpz_class> dual_quot = smith_divisors(to_z(s.doubled_matrix()));

    // primes to inspect: divisors of the level and of the index
    std::vector<i64> primes = prime_factors(s.level());
    for (const auto& dv : quot)
        for (i64 q : prime_factors(dv.get_si()))
            if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);

    for (i64 q : primes) {
        mpz_class qz(static_cast<long>(q));
        auto got = q_part(quot, qz);
        auto want = (d % q == 0) ? q_part(dual_quot, qz) : std::vector<mpz_class>{};
        if (got != want) {
            std::ostringstream os;
            os << "divisor mismatch at prime " << q << ": got {";
            for (const auto& v : got) os << v << " ";
            os << "} want {";
            for (const auto& v : want) os << v << " ";
            os << "}";
            return {false, os.str()};
        }
    }
    return {true, ""};
}

} // namespace singtheta
