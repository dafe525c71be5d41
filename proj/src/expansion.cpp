#include "singtheta/expansion.hpp"

#include <json.hpp>

#include "singtheta/errors.hpp"

namespace singtheta {

using nlohmann::json;

FourierExpansion::FourierExpansion(int degree, i64 trace_bound)
    : degree_(degree), trace_bound_(trace_bound) {
    if (degree < 0) throw input_error("FourierExpansion: degree must be >= 0");
    if (trace_bound < 0) throw input_error("FourierExpansion: trace bound must be >= 0");
}

mpq_class FourierExpansion::coeff(const HalfIntegralForm& t) const {
    if (t.size() != degree_) throw input_error("coeff: key size does not match degree");
    if (t.trace() > trace_bound_)
        throw bound_error("coeff: key " + t.to_string() + " outside trace bound");
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? mpq_class(0) : it->second;
}

mpq_class FourierExpansion::constant_term() const {
    if (degree_ == 0) return const0_;
    return coeff(HalfIntegralForm::zero(degree_));
}

void FourierExpansion::set_coeff(const HalfIntegralForm& t, mpq_class v) {
    if (t.size() != degree_) throw input_error("set_coeff: key size does not match degree");
    if (t.trace() > trace_bound_)
        throw bound_error("set_coeff: key " + t.to_string() + " outside trace bound");
    if (!t.is_positive_semidefinite())
        throw input_error("set_coeff: key " + t.to_string() + " is not positive semidefinite");
    if (v == 0)
        coeffs_.erase(t);
    else
        coeffs_.insert_or_assign(t, std::move(v));
}

void FourierExpansion::add_coeff(const HalfIntegralForm& t, const mpq_class& v) {
    if (v == 0) return;
    set_coeff(t, coeff(t) + v);
}

void FourierExpansion::set_constant(mpq_class v) {
    if (degree_ != 0) {
        set_coeff(HalfIntegralForm::zero(degree_), std::move(v));
        return;
    }
    const0_ = std::move(v);
}

bool FourierExpansion::is_zero() const {
    return coeffs_.empty() && const0_ == 0;
}

ResidueExpansion::ResidueExpansion(int degree, i64 trace_bound, i64 p, int m)
    : degree_(degree), trace_bound_(trace_bound), p_(p), m_(m),
      modulus_(pow_checked(p, m)) {}

i64 ResidueExpansion::coeff(const HalfIntegralForm& t) const {
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? 0 : it->second;
}

void ResidueExpansion::set_coeff(const HalfIntegralForm& t, i64 v) {
    v %= modulus_;
    if (v < 0) v += modulus_;
    if (v == 0)
        coeffs_.erase(t);
    else
        coeffs_.insert_or_assign(t, v);
}

void ResidueExpansion::set_constant(i64 v) {
    if (degree_ != 0) {
        set_coeff(HalfIntegralForm::zero(degree_), v);
        return;
    }
    v %= modulus_;
    if (v < 0) v += modulus_;
    const0_ = v;
}

i64 pow_checked(i64 p, int m) {
    if (p < 2 || m < 1) throw input_error("modulus p^m requires p >= 2, m >= 1");
    i64 r = 1;
    for (int i = 0; i < m; ++i) {
        if (r > (i64(1) << 62) / p) throw input_error("modulus p^m too large");
        r *= p;
    }
    return r;
}

i64 residue_mod(const mpq_class& q, i64 p, int m) {
    const i64 mod = pow_checked(p, m);
    mpz_class den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw input_error("coefficient " + q.get_str() + " is not p-integral for p=" +
                          std::to_string(p));
    mpz_class mz(static_cast<long>(mod));
    mpz_class deninv;
    if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mz.get_mpz_t()))
        throw input_error("denominator not invertible mod p^m");
    mpz_class r = (q.get_num() % mz) * deninv % mz;
    if (r < 0) r += mz;
    return static_cast<i64>(r.get_si());
}

int nu_p(const mpq_class& q, i64 p) {
    if (q == 0) throw input_error("nu_p of zero");
    mpz_class pz(static_cast<long>(p)), t;
    int vnum = static_cast<int>(mpz_remove(t.get_mpz_t(), q.get_num_mpz_t(), pz.get_mpz_t()));
    int vden = static_cast<int>(mpz_remove(t.get_mpz_t(), q.get_den_mpz_t(), pz.get_mpz_t()));
    return vnum - vden;
}

namespace {

void require_same_degree(const FourierExpansion& f, const FourierExpansion& g,
                         const char* what) {
    if (f.degree() != g.degree())
        throw input_error(std::string(what) + ": degree mismatch");
}

} // namespace

FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g) {
    require_same_degree(f, g, "add");
    FourierExpansion r(f.degree(), std::min(f.trace_bound(), g.trace_bound()));
    if (r.degree() == 0) {
        r.set_constant(f.constant_term() + g.constant_term());
    } else {
        for (const auto& [t, a] : f.coeffs())
            if (t.trace() <= r.trace_bound()) r.add_coeff(t, a);
        for (const auto& [t, a] : g.coeffs())
            if (t.trace() <= r.trace_bound()) r.add_coeff(t, a);
    }
    if (f.weight && g.weight && *f.weight == *g.weight) r.weight = f.weight;
    if (f.level && g.level && *f.level == *g.level) r.level = f.level;
    if (f.character && g.character && f.character->same_character(*g.character))
        r.character = f.character;
    r.gl_invariant = f.gl_invariant && g.gl_invariant;
    return r;
}

FourierExpansion scale(const mpq_class& c, const FourierExpansion& f) {
    FourierExpansion r(f.degree(), f.trace_bound());
    r.weight = f.weight;
    r.character = f.character;
    r.level = f.level;
    r.gl_invariant = f.gl_invariant;
    if (c == 0) return r;
    if (f.degree() == 0) {
        r.set_constant(c * f.constant_term());
        return r;
    }
    for (const auto& [t, a] : f.coeffs()) r.set_coeff(t, c * a);
    return r;
}

FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g) {
    require_same_degree(f, g, "multiply");
    FourierExpansion r(f.degree(), std::min(f.trace_bound(), g.trace_bound()));
    if (r.degree() == 0) {
        r.set_constant(f.constant_term() * g.constant_term());
        return r;
    }
    const int n = f.degree();
    for (const auto& [t1, a1] : f.coeffs()) {
        if (t1.trace() > r.trace_bound()) continue;
        for (const auto& [t2, a2] : g.coeffs()) {
            if (t1.trace() + t2.trace() > r.trace_bound()) continue;
            std::vector<i64> sum(static_cast<size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    sum[static_cast<size_t>(i) * n + j] = t1.doubled(i, j) + t2.doubled(i, j);
            r.add_coeff(HalfIntegralForm(n, std::move(sum)), a1 * a2);
        }
    }
    if (f.weight && g.weight) r.weight = *f.weight + *g.weight;
    if (f.level && g.level) r.level = std::lcm(*f.level, *g.level);
    if (f.character && g.character) r.character = f.character->times(*g.character);
    r.gl_invariant = f.gl_invariant && g.gl_invariant;
    return r;
}

ResidueExpansion reduce_mod(const FourierExpansion& f, i64 p, int m) {
    ResidueExpansion r(f.degree(), f.trace_bound(), p, m);
    if (f.degree() == 0) {
        r.set_constant(residue_mod(f.constant_term(), p, m));
        return r;
    }
    for (const auto& [t, a] : f.coeffs()) {
        try {
            r.set_coeff(t, residue_mod(a, p, m));
        } catch (const input_error&) {
            throw input_error("coefficient at T=" + t.to_string() + " (" + a.get_str() +
                              ") is not p-integral for p=" + std::to_string(p));
        }
    }
    return r;
}

bool congruent(const FourierExpansion& f, const FourierExpansion& g, i64 p, int m) {
    require_same_degree(f, g, "congruent");
    const i64 bound = std::min(f.trace_bound(), g.trace_bound());
    if (f.degree() == 0)
        return residue_mod(f.constant_term() - g.constant_term(), p, m) == 0;
    auto within = [&](const FourierExpansion& h, const HalfIntegralForm& t) {
        return t.trace() <= bound ? h.coeff(t) : mpq_class(0);
    };
    for (const auto& [t, a] : f.coeffs()) {
        if (t.trace() > bound) continue;
        if (residue_mod(a - within(g, t), p, m) != 0) return false;
    }
    for (const auto& [t, a] : g.coeffs()) {
        if (t.trace() > bound) continue;
        if (residue_mod(within(f, t) - a, p, m) != 0) return false;
    }
    return true;
}

FourierExpansion siegel_phi(const FourierExpansion& f) {
    if (f.degree() < 1) throw input_error("siegel_phi: degree must be >= 1");
    const int n = f.degree();
    FourierExpansion r(n - 1, f.trace_bound());
    for (const auto& [t, a] : f.coeffs()) {
        bool last_zero = true;
        for (int i = 0; i < n && last_zero; ++i) last_zero = t.doubled(i, n - 1) == 0;
        if (!last_zero) continue;
        if (n == 1) {
            r.set_constant(a);
            continue;
        }
        r.set_coeff(t.leading_block(n - 1), a);
    }
    r.weight = f.weight;
    r.character = f.character;
    r.level = f.level;
    r.gl_invariant = f.gl_invariant;
    return r;
}

FourierExpansion rank_subseries(const FourierExpansion& f, int r) {
    if (r < 0 || r > f.degree()) throw input_error("rank_subseries: rank out of range");
    FourierExpansion out(f.degree(), f.trace_bound());
    if (f.degree() == 0) {
        if (r == 0) out.set_constant(f.constant_term());
        return out;
    }
    for (const auto& [t, a] : f.coeffs())
        if (t.rank() == r) out.set_coeff(t, a);
    out.gl_invariant = f.gl_invariant;
    return out;
}

FourierExpansion sharp_subseries(const FourierExpansion& f, int r) {
    if (r < 0 || r > f.degree()) throw input_error("sharp_subseries: size out of range");
    FourierExpansion out(f.degree(), f.trace_bound());
    if (f.degree() == 0 || r == 0) return f;
    for (const auto& [t, a] : f.coeffs())
        if (t.leading_block(r).is_positive_definite()) out.set_coeff(t, a);
    out.gl_invariant = f.gl_invariant;
    return out;
}

std::map<HalfIntegralForm, FourierExpansion> block_restrict(const FourierExpansion& f, int r) {
    if (r < 1 || r > f.degree()) throw input_error("block_restrict: block size out of range");
    const int total = f.degree(), n = total - r;
    std::map<HalfIntegralForm, FourierExpansion> out;
    for (const auto& [key, a] : f.coeffs()) {
        HalfIntegralForm lead = key.leading_block(r);
        auto it = out.find(lead);
        if (it == out.end())
            it = out.emplace(lead, FourierExpansion(n, f.trace_bound() - lead.trace())).first;
        if (n == 0) {
            it->second.set_constant(it->second.constant_term() + a);
            continue;
        }
        std::vector<i64> tail(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                tail[static_cast<size_t>(i) * n + j] = key.doubled(r + i, r + j);
        it->second.add_coeff(HalfIntegralForm(n, std::move(tail)), a);
    }
    return out;
}

namespace {

HalfIntegralForm index_key(i64 t) { return HalfIntegralForm(1, {2 * t}); }

} // namespace

FourierExpansion u_operator(const FourierExpansion& f, i64 p) {
    if (f.degree() != 1) throw input_error("u_operator: degree-1 expansions only");
    if (p < 2) throw input_error("u_operator: p must be >= 2");
    FourierExpansion r(1, f.trace_bound() / p);
    for (const auto& [t, a] : f.coeffs()) {
        const i64 idx = t.doubled(0, 0) / 2;
        if (idx % p == 0) r.set_coeff(index_key(idx / p), a);
    }
    return r;
}

FourierExpansion v_operator(const FourierExpansion& f, i64 p) {
    if (f.degree() != 1) throw input_error("v_operator: degree-1 expansions only");
    if (p < 2) throw input_error("v_operator: p must be >= 2");
    FourierExpansion r(1, f.trace_bound() * p);
    for (const auto& [t, a] : f.coeffs())
        r.set_coeff(index_key(t.doubled(0, 0) / 2 * p), a);
    return r;
}

bool equal_within(const FourierExpansion& f, const FourierExpansion& g, i64 bound) {
    if (f.degree() != g.degree()) return false;
    if (bound > std::min(f.trace_bound(), g.trace_bound()))
        throw bound_error("equal_within: requested bound exceeds stored bounds");
    if (f.degree() == 0) return f.constant_term() == g.constant_term();
    for (const auto& [t, a] : f.coeffs())
        if (t.trace() <= bound && g.coeff(t) != a) return false;
    for (const auto& [t, a] : g.coeffs())
        if (t.trace() <= bound && f.coeff(t) != a) return false;
    return true;
}

bool check_gl_invariance(const FourierExpansion& f) {
    if (f.degree() == 0) return true;
    const auto gens = gl_generators(f.degree());
    for (const auto& [t, a] : f.coeffs())
        for (const auto& u : gens) {
            HalfIntegralForm tu = t.transformed(u);
            if (tu.trace() <= f.trace_bound() && f.coeff(tu) != a) return false;
        }
    return true;
}

namespace {

json form_to_json(const HalfIntegralForm& t) {
    json rows = json::array();
    for (int i = 0; i < t.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < t.size(); ++j) row.push_back(t.doubled(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

HalfIntegralForm form_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw input_error("matrix literal must be a nonempty array of arrays");
    std::vector<std::vector<i64>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw input_error("matrix literal must be an array of arrays");
        std::vector<i64> row;
        for (const auto& v : r) {
            if (!v.is_number_integer()) throw input_error("matrix entries must be integers");
            row.push_back(v.get<i64>());
        }
        rows.push_back(std::move(row));
    }
    return HalfIntegralForm::from_rows(rows);
}

} // namespace

std::string expansion_to_json(const FourierExpansion& f) {
    json j;
    j["degree"] = f.degree();
    j["trace_bound"] = f.trace_bound();
    json coeffs = json::array();
    if (f.degree() == 0) {
        if (f.constant_term() != 0)
            coeffs.push_back({{"T", json::array()}, {"a", f.constant_term().get_str()}});
    } else {
        for (const auto& [t, a] : f.coeffs())
            coeffs.push_back({{"T", form_to_json(t)}, {"a", a.get_str()}});
    }
    j["coeffs"] = std::move(coeffs);
    if (f.weight) j["weight"] = *f.weight;
    if (f.level) j["level"] = *f.level;
    if (f.character) {
        json fac = json::array();
        for (const auto& d : f.character->factors()) fac.push_back(d.get_str());
        j["character"] = {{"modulus", f.character->modulus()},
                          {"sign_exp", f.character->sign_exp()},
                          {"factors", std::move(fac)}};
    }
    if (f.gl_invariant) j["gl_invariant"] = true;
    return j.dump(2) + "\n";
}

FourierExpansion expansion_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("bad expansion file: ") + e.what());
    }
    if (!j.contains("degree") || !j.contains("trace_bound") || !j.contains("coeffs"))
        throw input_error("expansion file needs degree, trace_bound and coeffs");
    FourierExpansion f(j["degree"].get<int>(), j["trace_bound"].get<i64>());
    for (const auto& entry : j["coeffs"]) {
        mpq_class a;
        if (a.set_str(entry.at("a").get<std::string>(), 10) != 0)
            throw input_error("bad rational literal: " + entry.at("a").get<std::string>());
        a.canonicalize();
        if (f.degree() == 0) {
            f.set_constant(a);
            continue;
        }
        f.set_coeff(form_from_json(entry.at("T")), a);
    }
    if (j.contains("weight")) f.weight = j["weight"].get<i64>();
    if (j.contains("level")) f.level = j["level"].get<i64>();
    if (j.contains("character")) {
        const auto& c = j["character"];
        std::vector<mpz_class> fac;
        for (const auto& d : c.at("factors")) fac.emplace_back(d.get<std::string>());
        f.character = QuadChar(c.at("modulus").get<i64>(), c.at("sign_exp").get<int>(), fac);
    }
    if (j.contains("gl_invariant")) f.gl_invariant = j["gl_invariant"].get<bool>();
    return f;
}

std::string residues_to_json(const ResidueExpansion& f) {
    json j;
    j["degree"] = f.degree();
    j["trace_bound"] = f.trace_bound();
    j["modulus"] = f.modulus();
    json coeffs = json::array();
    if (f.degree() == 0) {
        if (f.constant_term() != 0)
            coeffs.push_back({{"T", json::array()}, {"a", f.constant_term()}});
    } else {
        for (const auto& [t, a] : f.coeffs())
            coeffs.push_back({{"T", form_to_json(t)}, {"a", a}});
    }
    j["coeffs"] = std::move(coeffs);
    return j.dump(2) + "\n";
}

} // namespace singtheta
