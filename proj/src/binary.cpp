#include "singtheta/binary.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "singtheta/enumerate.hpp"
#include "singtheta/errors.hpp"

namespace singtheta {

bool BinaryForm::is_reduced() const { return std::abs(b) <= a && a <= c; }

bool BinaryForm::is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

HalfIntegralForm BinaryForm::form() const {
    return HalfIntegralForm(2, {2 * a, b, b, 2 * c});
}

std::string BinaryForm::to_string() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

std::pair<BinaryForm, UnimodularMatrix> gauss_reduce(const BinaryForm& f) {
    if (!f.is_positive_definite())
        throw input_error("gauss_reduce: form must be positive definite");
    i64 a = f.a, b = f.b, c = f.c;
    Mat64 u = Mat64::identity(2);
    auto apply = [&](i64 u00, i64 u01, i64 u10, i64 u11) {
        Mat64 v(2, 2);
        v(0, 0) = u00; v(0, 1) = u01; v(1, 0) = u10; v(1, 1) = u11;
        u = mul(u, v);
    };
    while (!(std::abs(b) <= a && a <= c)) {
        if (c < a) {
            std::swap(a, c);
            b = -b;
            apply(0, -1, 1, 0);
        } else {
            // shift b into [-a, a]
            i64 q = b >= 0 ? (b + a) / (2 * a) : -((-b + a) / (2 * a));
            b -= 2 * q * a;
            c += q * q * a - q * (b + 2 * q * a); // c - q*b_old + q^2*a
            apply(1, -q, 0, 1);
        }
    }
    if (b < 0) { // GL_2(Z) classes identify (a,b,c) with (a,-b,c)
        b = -b;
        apply(1, 0, 0, -1);
    }
    BinaryForm red{a, b, c};
    UnimodularMatrix uni(u);
    if (f.form().transformed(uni.u) != red.form())
        throw std::logic_error("gauss_reduce: transform bookkeeping broken");
    return {red, uni};
}

std::vector<BinaryForm> class_reps(i64 disc) {
    if (disc >= 0) throw input_error("class_reps: discriminant must be negative");
    const i64 r = ((disc % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw input_error("class_reps: discriminant must be 0 or 1 mod 4");
    std::vector<BinaryForm> out;
    for (i64 a = 1; 3 * a * a <= -disc; ++a)
        for (i64 b = (disc % 2 == 0) ? 0 : 1; b <= a; b += 2) {
            const i64 num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            out.push_back({a, b, c});
        }
    std::sort(out.begin(), out.end());
    return out;
}

LevelPReps level_p_reps(i64 p) {
    if (p < 2) throw input_error("level_p_reps: prime required");
    if (p % 4 != 3)
        return {{},
                "no positive definite even binary forms of level " + std::to_string(p) +
                    " exist (p = 3 mod 4 required)"};
    std::vector<BinaryForm> reps;
    for (const auto& f : class_reps(-p))
        if (f.form().level() == p) reps.push_back(f);
    return {reps, ""};
}

namespace {

// histogram of representation numbers A(f, v) for 0 <= v <= bound
std::vector<i64> value_histogram(const BinaryForm& f, i64 bound) {
    FormEnumerator en(f.form().doubled_matrix());
    std::vector<i64> h(static_cast<size_t>(bound) + 1, 0);
    for (const auto& [x, doubled_val] : en.up_to(2 * bound)) {
        (void)x;
        ++h[static_cast<size_t>(doubled_val / 2)];
    }
    return h;
}

std::vector<i64> primes_up_to(i64 bound) {
    std::vector<bool> composite(static_cast<size_t>(std::max<i64>(bound + 1, 2)), false);
    std::vector<i64> ps;
    for (i64 i = 2; i <= bound; ++i) {
        if (composite[static_cast<size_t>(i)]) continue;
        ps.push_back(i);
        for (i64 j = i * i; j <= bound; j += i) composite[static_cast<size_t>(j)] = true;
    }
    return ps;
}

} // namespace

std::vector<std::pair<i64, i64>> represented_primes(const BinaryForm& f, i64 bound) {
    if (!f.is_positive_definite())
        throw input_error("represented_primes: form must be positive definite");
    auto hist = value_histogram(f, bound);
    std::vector<std::pair<i64, i64>> out;
    for (i64 l : primes_up_to(bound))
        if (hist[static_cast<size_t>(l)] > 0) out.emplace_back(l, hist[static_cast<size_t>(l)]);
    return out;
}

bool weber_check(i64 disc, i64 bound) {
    std::vector<BinaryForm> prim;
    for (const auto& f : class_reps(disc))
        if (f.is_primitive()) prim.push_back(f);
    if (prim.size() < 2) return true;
    std::vector<std::vector<i64>> hists;
    hists.reserve(prim.size());
    for (const auto& f : prim) hists.push_back(value_histogram(f, bound));
    for (i64 l : primes_up_to(bound)) {
        if (disc % l == 0) continue;
        int hit = 0;
        for (const auto& h : hists)
            if (h[static_cast<size_t>(l)] > 0) ++hit;
        if (hit >= 2) return false;
    }
    return true;
}

IndependenceResult theta_independence_mod_p(i64 p, i64 coeff_bound) {
    auto reps = level_p_reps(p).reps;
    const int h = static_cast<int>(reps.size());
    if (h == 0) return {0, 0};
    std::vector<std::vector<i64>> rows;
    rows.reserve(h);
    for (const auto& f : reps) {
        auto hist = value_histogram(f, coeff_bound);
        for (auto& v : hist) v %= p;
        rows.push_back(std::move(hist));
    }
    // Gaussian elimination over F_p
    int rank = 0;
    const int cols = static_cast<int>(coeff_bound) + 1;
    for (int c = 0; c < cols && rank < h; ++c) {
        int piv = -1;
        for (int i = rank; i < h; ++i)
            if (rows[i][static_cast<size_t>(c)] % p != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        // normalize pivot to 1
        i64 inv = 1, base = rows[rank][static_cast<size_t>(c)] % p;
        for (i64 x = 1; x < p; ++x)
            if (base * x % p == 1) { inv = x; break; }
        for (auto& v : rows[rank]) v = v * inv % p;
        for (int i = 0; i < h; ++i) {
            if (i == rank) continue;
            i64 f = rows[i][static_cast<size_t>(c)] % p;
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                rows[i][static_cast<size_t>(j)] =
                    ((rows[i][static_cast<size_t>(j)] - f * rows[rank][static_cast<size_t>(j)]) % p + p) % p;
        }
        ++rank;
    }
    return {rank, h};
}

namespace {

i64 pow_i64(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (i64(1) << 62) / base) throw input_error("power overflow");
        r *= base;
    }
    return r;
}

HalfIntegralForm sij_matrix(i64 p, int i, int j, i64 a, i64 b, i64 d) {
    const i64 pi = pow_i64(p, i);
    const i64 pj1 = pow_i64(p, j + 1);
    return HalfIntegralForm(2, {2 * a * pi, 2 * b * pi * pj1,
                                2 * b * pi * pj1, 2 * d * pi * pj1 * pow_i64(p, j)});
}

} // namespace

SijForm::SijForm(i64 p_, int i_, int j_, i64 a_, i64 b_, i64 d_)
    : p(p_), i(i_), j(j_), a(a_), b(b_), d(d_), form(sij_matrix(p_, i_, j_, a_, b_, d_)) {
    if (p < 3) throw input_error("SijForm: odd prime required");
    if (i < 0 || j < 0) throw input_error("SijForm: exponents must be >= 0");
    if (a * d * p - b * b * p * p != p)
        throw input_error("SijForm: relation a*d*p - b^2*p^2 = p violated");
    if (!form.is_positive_definite())
        throw input_error("SijForm: form is not positive definite");
    // determinant identity det(2 form) = 4 p^(2(i+j)+1)
    mpz_class expect = 4 * mpz_class(static_cast<long>(pow_i64(p, 2 * (i + j) + 1)));
    if (form.det_doubled() != expect)
        throw std::logic_error("SijForm: determinant identity broken");
    // the odd part of the level is exactly p^(i+2j+1)
    i64 lv = form.level();
    while (lv % 2 == 0) lv /= 2;
    if (lv != pow_i64(p, i + 2 * j + 1))
        throw std::logic_error("SijForm: level identity broken");
}

} // namespace singtheta
