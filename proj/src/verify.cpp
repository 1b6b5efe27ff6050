#include "prodiff/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "prodiff/freealg.hpp"
#include "prodiff/json_io.hpp"
#include "prodiff/lie.hpp"
#include "prodiff/norms.hpp"
#include "prodiff/random.hpp"
#include "prodiff/series.hpp"
#include "prodiff/triangular.hpp"

namespace prodiff {

namespace {

using Json = nlohmann::json;
using json::to_json;

std::uint64_t check_seed(std::uint64_t seed, const std::string& name)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

using Body = std::function<std::optional<Json>(RandomSource&, std::size_t)>;

class Runner {
public:
    explicit Runner(const VerifyConfig& config) : config_(config) {}

    void check(const std::string& name, std::size_t instances, const Body& body)
    {
        RandomSource rng(check_seed(config_.seed, name));
        Json entry = {{"name", name}, {"instances", instances}, {"passed", true}};
        const bool inject = config_.inject_fault && checks_.empty();
        for (std::size_t i = 0; i < instances; ++i) {
            std::optional<Json> failure;
            try {
                failure = body(rng, i);
            } catch (const std::exception& e) {
                failure = Json{{"error", e.what()}};
            }
            if (inject && i == 0 && !failure) failure = Json{{"injected_fault", true}};
            if (failure) {
                (*failure)["instance"] = i;
                entry["passed"] = false;
                entry["repro"] = std::move(*failure);
                break;
            }
        }
        checks_.push_back(std::move(entry));
    }

    Json finish(const std::string& suite) const
    {
        bool passed = true;
        for (const auto& c : checks_) passed = passed && c["passed"].get<bool>();
        return {{"suite", suite}, {"order", config_.order}, {"seed", config_.seed}, {"passed", passed},
                {"checks", checks_}};
    }

    std::size_t order() const { return config_.order; }

private:
    VerifyConfig config_;
    Json checks_ = Json::array();
};

std::optional<Json> fail_if(bool bad, Json repro)
{
    if (bad) return repro;
    return std::nullopt;
}

Json pair_repro(const Json& a, const Json& b) { return {{"a", a}, {"b", b}}; }

// ---------------------------------------------------------------------------

void group_suite(Runner& r)
{
    const std::size_t n = r.order();

    r.check("compose.associative", 200, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n), b = rng.diffeo(n), c = rng.diffeo(n);
        return fail_if(compose(compose(a, b), c) != compose(a, compose(b, c)),
                       {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}});
    });

    r.check("compose.identity", 200, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        const auto id = FormalDiffeo::identity(n);
        return fail_if(compose(a, id) != a || compose(id, a) != a, {{"a", to_json(a)}});
    });

    r.check("invert.two_sided", 200, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        const auto inv = invert_lagrange(a);
        return fail_if(!compose(a, inv).is_identity() || !compose(inv, a).is_identity(), {{"a", to_json(a)}});
    });

    r.check("invert.lagrange_equals_recursive", 200, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        return fail_if(invert_lagrange(a) != invert_recursive(a), {{"a", to_json(a)}});
    });

    r.check("invert.catalan", 1, [n](RandomSource&, std::size_t) {
        // x + x^2 inverts to sum (-1)^{k-1} Catalan(k-1) x^k.
        std::vector<Rational> tail(n - 1);
        tail[0] = 1;
        const auto inv = invert_lagrange(FormalDiffeo(n, tail));
        Integer catalan = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            const Rational expected = k % 2 == 1 ? Rational(catalan) : Rational(-catalan);
            if (inv.coeff(k) != expected) return fail_if(true, {{"degree", k}});
            const auto m = static_cast<unsigned long>(k - 1);
            catalan = catalan * 2 * (2 * m + 1) / (m + 2);
        }
        return std::optional<Json>{};
    });

    r.check("truncation.compatible", 50, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n), b = rng.diffeo(n);
        const auto ab = compose(a, b);
        const auto inv = invert_lagrange(a);
        for (std::size_t k = 1; k <= n; ++k) {
            if (ab.truncate_to(k) != compose(a.truncate_to(k), b.truncate_to(k)) ||
                inv.truncate_to(k) != invert_lagrange(a.truncate_to(k))) {
                return fail_if(true, {{"a", to_json(a)}, {"b", to_json(b)}, {"k", k}});
            }
        }
        return std::optional<Json>{};
    });

    r.check("scale.automorphism", 200, [n](RandomSource& rng, std::size_t i) {
        const auto a = rng.diffeo(n), b = rng.diffeo(n);
        const Rational sigma = i == 0 ? Rational(0) : rng.rational();
        const bool ok = scale_automorphism(compose(a, b), sigma) ==
                            compose(scale_automorphism(a, sigma), scale_automorphism(b, sigma)) &&
                        scale_automorphism(invert_lagrange(a), sigma) == invert_lagrange(scale_automorphism(a, sigma));
        return fail_if(!ok, {{"a", to_json(a)}, {"b", to_json(b)}, {"sigma", to_string(sigma)}});
    });

    r.check("scale.multiplicative", 200, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        const Rational s = rng.rational(), t = rng.rational();
        return fail_if(scale_automorphism(scale_automorphism(a, s), t) != scale_automorphism(a, s * t),
                       {{"a", to_json(a)}, {"s", to_string(s)}, {"t", to_string(t)}});
    });
}

// ---------------------------------------------------------------------------

FormalVectorField bch_degree4(const FormalVectorField& a, const FormalVectorField& b)
{
    const auto ab = bracket(a, b);
    const auto aab = bracket(a, ab);
    const auto bba = bracket(b, bracket(b, a));
    const auto baab = bracket(b, aab);
    auto z = field_add(a, b);
    z = field_add(z, field_scale(ab, make_rational(1, 2)));
    z = field_add(z, field_scale(field_add(aab, bba), make_rational(1, 12)));
    return field_add(z, field_scale(baab, make_rational(-1, 24)));
}

TriangularOperator random_strict(RandomSource& rng, std::size_t dim)
{
    TriangularBuilder b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < i; ++j) b.at(i, j) = rng.rational();
    }
    return std::move(b).build();
}

void operators_suite(Runner& r)
{
    const std::size_t n = r.order();
    const std::size_t nr = std::min<std::size_t>(n, 10);

    r.check("rep_T.homomorphism", 100, [nr](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(nr), b = rng.diffeo(nr);
        const bool ok = rep_T(compose(a, b), nr) == rep_T(a, nr) * rep_T(b, nr) &&
                        rep_T(invert_lagrange(a), nr) * rep_T(a, nr) == TriangularOperator::identity(nr + 1);
        return fail_if(!ok, pair_repro(to_json(a), to_json(b)));
    });

    r.check("rep_field.bracket", 100, [nr](RandomSource& rng, std::size_t) {
        const auto a = rng.field(nr), b = rng.field(nr);
        return fail_if(rep_field(bracket(a, b), nr) != commutator(rep_field(a, nr), rep_field(b, nr)),
                       pair_repro(to_json(a), to_json(b)));
    });

    r.check("matrix.exp_log_roundtrip", 50, [nr](RandomSource& rng, std::size_t) {
        const auto s = random_strict(rng, nr + 1);
        const auto u = TriangularOperator::identity(nr + 1) + random_strict(rng, nr + 1);
        const bool ok = log_unitriangular(exp_strict(s)) == s && exp_strict(log_unitriangular(u)) == u;
        return fail_if(!ok, {{"s", to_json(s)}, {"u", to_json(u)}});
    });

    r.check("taylor.reassembles", 100, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        return fail_if(reassemble(taylor_decomposition(a, n)) != rep_T(a, n), {{"a", to_json(a)}});
    });

    r.check("exp.matrix_equals_flow", 100, [nr](RandomSource& rng, std::size_t) {
        const auto f = rng.field(nr);
        return fail_if(exp_field(f) != exp_field_flow(f), {{"field", to_json(f)}});
    });

    r.check("exp_log.roundtrip", 100, [n](RandomSource& rng, std::size_t) {
        const auto f = rng.field(n - 1);
        const auto g = rng.diffeo(n);
        const bool ok = log_diffeo(exp_field(f)) == f && exp_field(log_diffeo(g)) == g;
        return fail_if(!ok, {{"field", to_json(f)}, {"diffeo", to_json(g)}});
    });

    r.check("exp.l1_closed_form", 20, [n](RandomSource& rng, std::size_t) {
        // exp(c L_1) = x/(1 - c x).
        const Rational c = rng.rational();
        const auto g = exp_field(FormalVectorField::basis(n - 1, 1, c));
        for (std::size_t j = 2; j <= n; ++j) {
            if (g.coeff(j) != pow(c, static_cast<unsigned>(j - 1))) return fail_if(true, {{"c", to_string(c)}});
        }
        return std::optional<Json>{};
    });

    r.check("exp.scale_equivariant", 100, [nr](RandomSource& rng, std::size_t) {
        const auto f = rng.field(nr);
        const Rational s = rng.rational();
        return fail_if(exp_field(scale_field(f, s)) != scale_automorphism(exp_field(f), s),
                       {{"field", to_json(f)}, {"sigma", to_string(s)}});
    });

    r.check("bracket.jacobi", 100, [nr](RandomSource& rng, std::size_t) {
        const auto a = rng.field(nr), b = rng.field(nr), c = rng.field(nr);
        const auto jac = field_add(field_add(bracket(a, bracket(b, c)), bracket(b, bracket(c, a))),
                                   bracket(c, bracket(a, b)));
        const bool ok = jac.is_zero() && field_add(bracket(a, b), bracket(b, a)).is_zero();
        return fail_if(!ok, {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}});
    });

    r.check("bch.low_degree", 50, [](RandomSource& rng, std::size_t) {
        const auto a = rng.field(4), b = rng.field(4);
        return fail_if(bch(a, b) != bch_degree4(a, b), pair_repro(to_json(a), to_json(b)));
    });
}

// ---------------------------------------------------------------------------

void norms_suite(Runner& r)
{
    const std::size_t n = r.order();

    r.check("qn_norm.golden", 11, [](RandomSource&, std::size_t k) {
        const auto dim = 2 * k + 2;
        const NormValue v = operator_norm_trunc(qn_operator(k, dim), 1, dim - 1);
        const Rational expected = Rational(factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k))) /
                                  Rational(factorial(static_cast<unsigned>(2 * k)));
        return fail_if(v.value != expected || qn_norm(k).value != expected,
                       {{"n", k}, {"computed", to_string(v.value)}, {"expected", to_string(expected)}});
    });

    r.check("h_norm.bound", 100, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        const HNormBound h = h_norm_bound(a);
        return fail_if(h.computed.value > h.bound.value, {{"a", to_json(a)}});
    });

    r.check("field_norm.sandwich", 100, [n](RandomSource& rng, std::size_t) {
        const auto f = rng.field(1 + rng.below(6));
        for (const Rational& t : {make_rational(1, 2), Rational(1), Rational(2)}) {
            const FieldNormBound b = field_norm_bound(f, t);
            Rational prev = 0;
            for (std::size_t m = 1; m <= n; ++m) {
                const std::size_t top = m + f.order();
                const NormValue v = operator_norm_trunc(rep_field(f.pad_to(top), top), t, m);
                if (v.value < b.lower.value || v.value > b.upper.value || v.value < prev) {
                    return fail_if(true, {{"field", to_json(f)}, {"t", to_string(t)}, {"columns", m}});
                }
                prev = v.value;
            }
        }
        return std::optional<Json>{};
    });

    const auto tuples = enumerate_multiplicities(20);
    r.check("u_combinatorial.bound", tuples.size(), [&tuples](RandomSource&, std::size_t i) {
        const auto& k = tuples[i];
        unsigned p = 0;
        for (auto v : k) p += v;
        const Rational cap = kInversionL * pow(Rational(kInversionM), p);
        return fail_if(u_combinatorial(k) > cap, {{"k", k}});
    });

    r.check("inversion.cap", 100, [n](RandomSource& rng, std::size_t) {
        auto a = rng.diffeo(n);
        const Rational w = w_norm(a, 1).value;
        if (w > 1) {
            std::vector<Rational> tail(a.tail().begin(), a.tail().end());
            for (auto& c : tail) c /= w;
            a = FormalDiffeo(n, std::move(tail));
        }
        const InversionNormBound b = inversion_norm_bound(a);
        return fail_if(b.partial_s.value > b.cap.value, {{"a", to_json(a)}});
    });

    r.check("operator_norm.submultiplicative", 50, [](RandomSource& rng, std::size_t) {
        const std::size_t m = 6;
        const std::size_t top = 2 * m + 4;
        const auto a = rng.field(m + 4).pad_to(top), b = rng.field(m + 4).pad_to(top);
        const Rational t = rng.positive_rational(4, 3);
        // Entries of the truncated product are exact, so the triangle
        // inequality applies column by column even after truncation.
        const auto ra = rep_field(a, top), rb = rep_field(b, top);
        const Rational lhs = operator_norm_trunc(ra * rb, t, m).value;
        const Rational rhs = operator_norm_trunc(ra, t, top).value * operator_norm_trunc(rb, t, m).value;
        return fail_if(lhs > rhs, {{"a", to_json(a)}, {"b", to_json(b)}, {"t", to_string(t)}});
    });

    r.check("w_norm.scaling", 100, [n](RandomSource& rng, std::size_t) {
        const auto a = rng.diffeo(n);
        const Rational s = rng.positive_rational();
        return fail_if(w_norm(scale_automorphism(a, s), 1).value != w_norm(a, s).value,
                       {{"a", to_json(a)}, {"sigma", to_string(s)}});
    });
}

// ---------------------------------------------------------------------------

UElement random_homogeneous(RandomSource& rng, std::size_t degree)
{
    const auto basis = pbw_basis(degree);
    UElement u;
    const std::size_t terms = 1 + rng.below(3);
    for (std::size_t i = 0; i < terms; ++i) u.add(basis[rng.below(basis.size())], rng.rational());
    return u;
}

// A tuple of 1..max_len indices in 1..6 whose sum stays within max_degree.
std::vector<unsigned> random_tuple(RandomSource& rng, std::size_t max_len, unsigned max_degree)
{
    const std::size_t len = 1 + rng.below(max_len);
    std::vector<unsigned> t;
    unsigned budget = max_degree;
    for (std::size_t i = 0; i < len; ++i) {
        const unsigned reserved = static_cast<unsigned>(len - i - 1);
        const unsigned cap = std::min(6u, budget - reserved);
        t.push_back(1 + static_cast<unsigned>(rng.below(cap)));
        budget -= t.back();
    }
    return t;
}

void freealg_suite(Runner& r)
{
    r.check("q1.golden", 3, [](RandomSource&, std::size_t i) {
        const unsigned n = static_cast<unsigned>(i + 1);
        const Rational expected = n == 3 ? 2 : 1;
        const Rational got = q1_norm(UElement::basis(n)).value.value;
        return fail_if(got != expected, {{"n", n}, {"value", to_string(got)}});
    });

    r.check("q1.ln_bounds", 8, [](RandomSource&, std::size_t i) {
        const std::size_t n = i + 1;
        const Rational q = q1_norm(UElement::basis(static_cast<unsigned>(n))).value.value;
        const Rational lower = Rational(1) / Rational(factorial(static_cast<unsigned>(n + 1)));
        return fail_if(q > ln_upper_bound(n, 1) || q < lower, {{"n", n}, {"value", to_string(q)}});
    });

    r.check("q1.additive_over_degrees", 50, [](RandomSource& rng, std::size_t) {
        const std::size_t d1 = 1 + rng.below(6);
        std::size_t d2 = 1 + rng.below(6);
        if (d2 == d1) d2 = d1 % 6 + 1;
        const UElement u1 = random_homogeneous(rng, d1), u2 = random_homogeneous(rng, d2);
        const Rational split = q1_norm(u1).value.value + q1_norm(u2).value.value;
        const Rational joint = q1_norm_joint(u1 + u2).value.value;
        return fail_if(split != joint || q1_norm(u1 + u2).value.value != split,
                       {{"u", json::to_json(u1 + u2)}, {"split", to_string(split)}, {"joint", to_string(joint)}});
    });

    r.check("qt.homogeneous", 20, [](RandomSource& rng, std::size_t) {
        const std::size_t d = 1 + rng.below(6);
        const UElement u = random_homogeneous(rng, d);
        const Rational t = rng.positive_rational();
        const Rational lhs = qt_norm(u, t).value.value;
        const Rational rhs = pow(t, static_cast<unsigned>(d)) * q1_norm(u).value.value;
        return fail_if(lhs != rhs, {{"u", json::to_json(u)}, {"t", to_string(t)}});
    });

    r.check("q.sandwich", 20, [](RandomSource& rng, std::size_t) {
        const auto f = rng.field(1 + rng.below(5));
        const UElement u = UElement::from_field(f);
        for (const Rational& t : {make_rational(1, 2), Rational(1), Rational(2)}) {
            const LowerVectBound lo = q_lower_vect(u, t, 12);
            const Rational q = qt_norm(u, lo.scale).value.value;
            const Rational up = q_upper_vect(f, lo.scale).certified.value;
            if (lo.represented.value > q || q > up || q < field_weight_sum(f, t)) {
                return fail_if(true, {{"field", to_json(f)}, {"t", to_string(t)}});
            }
        }
        return std::optional<Json>{};
    });

    r.check("pbw.confluent", 500, [](RandomSource& rng, std::size_t) {
        const auto t = random_tuple(rng, 6, 14);
        const RawProducts raw{{t, Rational(1)}};
        return fail_if(pbw_straighten(raw, RewriteStrategy::leftmost) != pbw_straighten(raw, RewriteStrategy::rightmost),
                       {{"tuple", t}});
    });

    r.check("pbw.representation", 100, [](RandomSource& rng, std::size_t) {
        const auto t = random_tuple(rng, 5, 10);
        const std::size_t dim = 16;
        TriangularOperator direct = TriangularOperator::identity(dim);
        for (unsigned i : t) direct = direct * represent(UElement::basis(i), dim);
        return fail_if(represent(pbw_straighten(RawProducts{{t, Rational(1)}}), dim) != direct, {{"tuple", t}});
    });

    r.check("pi.homomorphism", 100, [](RandomSource& rng, std::size_t) {
        const auto p = rng.polynomial(3, 4), q = rng.polynomial(3, 4);
        return fail_if(pi_map(p * q) != pi_map(p) * pi_map(q), {{"p_words", p.terms().size()}});
    });

    r.check("r_norm.submultiplicative", 100, [](RandomSource& rng, std::size_t) {
        const auto p = rng.polynomial(3, 4), q = rng.polynomial(3, 4);
        const Rational t1 = rng.positive_rational(), t2 = rng.positive_rational();
        return fail_if(r_norm(p * q, t1, t2).value > r_norm(p, t1, t2).value * r_norm(q, t1, t2).value,
                       {{"t1", to_string(t1)}, {"t2", to_string(t2)}});
    });

    r.check("q.below_r_norm", 50, [](RandomSource& rng, std::size_t) {
        const auto p = rng.polynomial(3, 4);
        const Rational t = rng.positive_rational(3, 2);
        const UElement u = pi_map(p);
        if (u.is_zero()) return std::optional<Json>{};
        return fail_if(qt_norm(u, t).value.value > r_norm(p, t, t * t).value,
                       {{"u", json::to_json(u)}, {"t", to_string(t)}});
    });
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"group", "operators", "norms", "freealg", "all"};
    return names;
}

nlohmann::json run_suite(const std::string& suite, const VerifyConfig& config)
{
    if (config.order < 4) throw PreconditionError("verify needs --order >= 4");
    const std::map<std::string, void (*)(Runner&)> suites{
        {"group", group_suite}, {"operators", operators_suite}, {"norms", norms_suite}, {"freealg", freealg_suite}};
    if (suite == "all") {
        Json parts = Json::array();
        bool passed = true;
        for (const auto& [name, fn] : suites) {
            VerifyConfig c = config;
            c.inject_fault = config.inject_fault && parts.empty();
            Runner r(c);
            fn(r);
            Json rep = r.finish(name);
            passed = passed && rep["passed"].get<bool>();
            parts.push_back(std::move(rep));
        }
        return {{"suite", "all"}, {"order", config.order}, {"seed", config.seed}, {"passed", passed},
                {"suites", std::move(parts)}};
    }
    auto it = suites.find(suite);
    if (it == suites.end()) throw PreconditionError("unknown verify suite '" + suite + "'");
    Runner r(config);
    it->second(r);
    return r.finish(suite);
}

}  // namespace prodiff
