// Acceptance run: one PASS/FAIL line per criterion. Values that the library
// computes are compared against independent routes written here (naive
// polynomial arithmetic, hand-built matrices, a separate LP formulation) or
// against closed forms.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "prodiff/freealg.hpp"
#include "prodiff/lie.hpp"
#include "prodiff/norms.hpp"
#include "prodiff/random.hpp"
#include "prodiff/series.hpp"
#include "prodiff/triangular.hpp"

using namespace prodiff;

namespace {

using Poly = std::vector<Rational>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- naive series arithmetic ------------------------------------------------

Poly mul_trunc(const Poly& a, const Poly& b, std::size_t n)
{
    Poly out(n + 1);
    for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Poly substitute_naive(const Poly& outer, const Poly& inner, std::size_t n)
{
    Poly out(n + 1), power(n + 1);
    power[0] = 1;
    for (std::size_t k = 0; k < outer.size() && k <= n; ++k) {
        for (std::size_t i = 0; i <= n; ++i) out[i] += outer[k] * power[i];
        power = mul_trunc(power, inner, n);
    }
    return out;
}

Poly poly_of(const FormalDiffeo& g)
{
    Poly p(g.order() + 1);
    for (std::size_t j = 1; j <= g.order(); ++j) p[j] = g.coeff(j);
    return p;
}

// mu <- mu - (gamma(mu) - x): each pass fixes one more coefficient.
Poly inverse_fixed_point(const FormalDiffeo& g)
{
    const std::size_t n = g.order();
    Poly mu(n + 1);
    mu[1] = 1;
    for (std::size_t pass = 0; pass < n; ++pass) {
        Poly gm = substitute_naive(poly_of(g), mu, n);
        gm[1] -= 1;
        for (std::size_t i = 0; i <= n; ++i) mu[i] -= gm[i];
    }
    return mu;
}

// Column j holds gamma^j.
std::vector<Poly> power_columns(const FormalDiffeo& g, std::size_t n)
{
    std::vector<Poly> cols;
    Poly p(n + 1);
    p[0] = 1;
    for (std::size_t j = 0; j <= n; ++j) {
        cols.push_back(p);
        p = mul_trunc(p, poly_of(g), n);
    }
    return cols;
}

bool matches_columns(const TriangularOperator& t, const std::vector<Poly>& cols)
{
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (t.at(i, j) != cols[j][i]) return false;
        }
    }
    return true;
}

Integer binom(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// --- reporting --------------------------------------------------------------

int failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail)
{
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v)
{
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

// Runs a criterion body; an exception counts as failure with its message.
void criterion(int id, const std::string& what, const std::function<std::pair<bool, std::string>()>& body)
{
    try {
        const auto [ok, detail] = body();
        report(id, ok, what, detail);
    } catch (const std::exception& e) {
        report(id, false, what, std::string("exception: ") + e.what());
    }
}

// --- criteria ---------------------------------------------------------------

std::pair<bool, std::string> group_laws()
{
    const std::size_t n = 12;
    RandomSource rng(1001);
    const auto start = Clock::now();
    std::size_t bad = 0;
    const FormalDiffeo id(n);
    for (int i = 0; i < 200; ++i) {
        const auto a = rng.diffeo(n), b = rng.diffeo(n), c = rng.diffeo(n);
        const auto inv = invert_lagrange(a);
        const bool ok = compose(compose(a, b), c) == compose(a, compose(b, c)) && compose(a, id) == a &&
                        compose(id, a) == a && compose(a, inv) == id && compose(inv, a) == id &&
                        poly_of(compose(a, b)) == substitute_naive(poly_of(b), poly_of(a), n);
        bad += ok ? 0 : 1;
    }
    const double secs = seconds_since(start);
    return {bad == 0 && secs < 30, "N=12, 200 instances, " + std::to_string(bad) + " failures, " + fmt(secs) + " s"};
}

std::pair<bool, std::string> dual_inversion()
{
    const std::size_t n = 12;
    RandomSource rng(1002);
    std::size_t bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto a = rng.diffeo(n);
        const auto lag = invert_lagrange(a);
        if (lag != invert_recursive(a) || poly_of(lag) != inverse_fixed_point(a)) ++bad;
    }
    std::vector<Rational> tail(4);
    tail[0] = 1;
    const FormalDiffeo quad(5, tail);
    const std::vector<long> expected{1, -1, 2, -5, 14};
    bool catalan = true;
    for (const auto& inv : {invert_lagrange(quad), invert_recursive(quad)}) {
        for (std::size_t k = 1; k <= 5; ++k) catalan = catalan && inv.coeff(k) == expected[k - 1];
    }
    return {bad == 0 && catalan, "200 instances at N=12, " + std::to_string(bad) +
                                     " disagreements; x+x^2 -> 1,-1,2,-5,14 " + (catalan ? "ok" : "wrong")};
}

std::pair<bool, std::string> representation()
{
    const std::size_t n = 10;
    RandomSource rng(1003);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto a = rng.diffeo(n), b = rng.diffeo(n);
        const auto ta = rep_T(a, n), tb = rep_T(b, n), tab = rep_T(compose(a, b), n);
        const bool ok = ta * tb == tab && matches_columns(ta, power_columns(a, n)) &&
                        matches_columns(tab, power_columns(compose(a, b), n));
        bad += ok ? 0 : 1;
    }
    return {bad == 0, "100 pairs at N=10, " + std::to_string(bad) + " mismatches"};
}

std::pair<bool, std::string> exp_log()
{
    const std::size_t n = 10;
    RandomSource rng(1004);
    std::size_t flow_bad = 0, round_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto f = rng.field(n);
        const auto g = exp_field(f);
        if (g != exp_field_flow(f)) ++flow_bad;
        const auto d = rng.diffeo(n);
        if (log_diffeo(g) != f || exp_field(log_diffeo(d)) != d) ++round_bad;
    }
    const auto l1 = exp_field(FormalVectorField::basis(n - 1, 1));
    bool ones = true;
    for (std::size_t j = 1; j <= n; ++j) ones = ones && l1.coeff(j) == 1;
    return {flow_bad == 0 && round_bad == 0 && ones,
            "100 fields at N=10: matrix/flow mismatches " + std::to_string(flow_bad) + ", round-trip failures " +
                std::to_string(round_bad) + ", exp(L1) all ones " + (ones ? "yes" : "no")};
}

// sum_n (1/n!) H^n x^{2n} d^n: column k, row i collects
// sum_n binom(k, n) [x^{i-k-n}] h^n, which must equal [x^i] gamma^k.
bool taylor_oracle(const FormalDiffeo& g, std::size_t n)
{
    Poly h(n + 1);
    for (std::size_t j = 2; j <= n; ++j) h[j - 2] = g.coeff(j);
    std::vector<Poly> hp{Poly(n + 1)};
    hp[0][0] = 1;
    for (std::size_t p = 1; 2 * p <= n; ++p) hp.push_back(mul_trunc(hp.back(), h, n));
    const auto cols = power_columns(g, n);
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i <= n; ++i) {
            Rational v = 0;
            for (std::size_t p = 0; p <= k && 2 * p <= n && i >= k + p; ++p) {
                v += Rational(binom(static_cast<unsigned>(k), static_cast<unsigned>(p))) * hp[p][i - k - p];
            }
            if (v != cols[k][i]) return false;
        }
    }
    return true;
}

std::pair<bool, std::string> taylor()
{
    const std::size_t n = 12;
    RandomSource rng(1005);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto g = rng.diffeo(n);
        const bool ok = reassemble(taylor_decomposition(g, n)) == rep_T(g, n) && taylor_oracle(g, n);
        bad += ok ? 0 : 1;
    }
    return {bad == 0, "100 instances at N=12, " + std::to_string(bad) + " mismatches"};
}

// Weighted column sums on V_t computed here from scratch.
Rational column_norm(const TriangularOperator& a, const Rational& t, std::size_t m)
{
    Rational s = 0;
    for (std::size_t i = m; i < a.dim(); ++i) {
        s += abs(a.at(i, m)) * pow(t, static_cast<unsigned>(i)) / Rational(factorial(static_cast<unsigned>(i)));
    }
    return s * Rational(factorial(static_cast<unsigned>(m))) / pow(t, static_cast<unsigned>(m));
}

std::pair<bool, std::string> norm_goldens()
{
    bool qn_ok = true;
    for (std::size_t k = 0; k <= 10; ++k) {
        const Integer f = factorial(static_cast<unsigned>(k));
        const Rational closed = make_rational(f * f, factorial(static_cast<unsigned>(2 * k)));
        const auto q = qn_operator(k, 2 * k + 2);
        Rational direct = 0;
        for (std::size_t m = 0; m < q.dim(); ++m) direct = std::max(direct, column_norm(q, 1, m));
        qn_ok = qn_ok && operator_norm_trunc(q, 1, q.dim() - 1).value == closed && direct == closed &&
                qn_norm(k).value == closed;
    }

    RandomSource rng(1006);
    std::size_t h_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto g = rng.diffeo(2 + rng.below(11));
        const auto h = h_operator(g, g.order());
        Rational computed = 0;
        for (std::size_t m = 0; m < h.dim(); ++m) computed = std::max(computed, column_norm(h, 1, m));
        Rational bound = 0;
        for (std::size_t j = 2; j <= g.order(); ++j) {
            bound += 2 * abs(g.coeff(j)) / Rational(factorial(static_cast<unsigned>(j)));
        }
        if (computed > bound || h_norm_bound(g).computed.value > bound) ++h_bad;
    }

    std::size_t sandwich_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto f = rng.field(1 + rng.below(6));
        for (const Rational& t : {make_rational(1, 2), Rational(1), Rational(2)}) {
            Rational lower = 0;
            for (std::size_t j = 1; j <= f.order(); ++j) {
                lower += abs(f.coeff(j)) * pow(t, static_cast<unsigned>(j)) /
                         Rational(factorial(static_cast<unsigned>(j + 1)));
            }
            Rational prev = 0;
            for (std::size_t m = 1; m <= 15; ++m) {
                const std::size_t top = m + f.order();
                const Rational v = operator_norm_trunc(rep_field(f.pad_to(top), top), t, m).value;
                if (v < lower || v > 2 * lower || v < prev) ++sandwich_bad;
                prev = v;
            }
        }
    }
    return {qn_ok && h_bad == 0 && sandwich_bad == 0,
            std::string("||Q_n|| n<=10 ") + (qn_ok ? "exact" : "MISMATCH") + ", H bound violations " +
                std::to_string(h_bad) + "/100, sandwich violations " + std::to_string(sandwich_bad) +
                " over 100 fields x t in {1/2,1,2} x M=1..15"};
}

void partitions(unsigned remaining, unsigned largest, std::vector<unsigned>& parts,
                std::vector<std::vector<unsigned>>& out)
{
    out.push_back(parts);
    for (unsigned j = std::min(remaining, largest); j >= 1; --j) {
        parts.push_back(j);
        partitions(remaining - j, j, parts, out);
        parts.pop_back();
    }
}

std::pair<bool, std::string> combinatorial()
{
    // Independent enumeration: partitions as part lists, U from the formula.
    std::vector<std::vector<unsigned>> parts_lists;
    std::vector<unsigned> scratch;
    partitions(20, 20, scratch, parts_lists);
    std::size_t bad = 0;
    for (const auto& parts : parts_lists) {
        std::vector<unsigned> k(20, 0);
        unsigned s = 0;
        for (unsigned j : parts) {
            ++k[j - 1];
            s += j;
        }
        const unsigned p = static_cast<unsigned>(parts.size());
        Rational u = 1;
        for (unsigned i = 2; i <= p; ++i) u *= s + i;
        for (unsigned j : parts) u *= Rational(factorial(j + 1));
        u /= Rational(factorial(s + 1));
        while (!k.empty() && k.back() == 0) k.pop_back();
        if (u != u_combinatorial(k) || u > pow(Rational(8), p)) ++bad;
    }
    const bool counts = parts_lists.size() == enumerate_multiplicities(20).size();

    RandomSource rng(1007);
    std::size_t cap_bad = 0;
    for (int i = 0; i < 100; ++i) {
        auto g = rng.diffeo(2 + rng.below(11));
        Rational w = 0;
        for (std::size_t j = 2; j <= g.order(); ++j) w += abs(g.coeff(j)) / Rational(factorial(unsigned(j)));
        if (w > 1) {
            std::vector<Rational> tail(g.tail().begin(), g.tail().end());
            for (auto& c : tail) c /= w;
            g = FormalDiffeo(g.order(), tail);
            w = 1;
        }
        const auto inv = invert_recursive(g);
        Rational partial = 0;
        for (std::size_t j = 2; j <= inv.order(); ++j) partial += abs(inv.coeff(j)) / Rational(factorial(unsigned(j)));
        const InversionNormBound b = inversion_norm_bound(g);
        const bool ok = partial == b.partial_s.value && partial <= b.cap.value &&
                        partial.get_d() <= std::exp(8 * w.get_d()) && b.cap.value.get_d() >= std::exp(8 * w.get_d()) * (1 - 1e-12);
        cap_bad += ok ? 0 : 1;
    }
    return {bad == 0 && counts && cap_bad == 0, std::to_string(parts_lists.size()) +
                                                    " tuples with sum j k_j <= 20, U <= 8^{sum k} violations " +
                                                    std::to_string(bad) + ", inversion cap violations " +
                                                    std::to_string(cap_bad) + "/100"};
}

UElement random_homogeneous(RandomSource& rng, std::size_t d)
{
    const auto basis = pbw_basis(d);
    UElement u;
    const std::size_t terms = 1 + rng.below(3);
    for (std::size_t i = 0; i < terms; ++i) u.add(basis[rng.below(basis.size())], rng.rational());
    return u;
}

std::pair<bool, std::string> quotient_norms()
{
    const auto start = Clock::now();
    std::vector<Rational> q(9);
    bool bound_ok = true;
    for (unsigned n = 1; n <= 8; ++n) {
        q[n] = q1_norm(UElement::basis(n)).value.value;
        Rational cap = n == 1 ? Rational(1)
                              : pow(Rational(2), n - 2) / Rational(factorial(n - 2));
        bound_ok = bound_ok && q[n] <= cap;
    }
    const double lp_secs = seconds_since(start);
    const bool goldens = q[1] == 1 && q[2] == 1 && q[3] == 2;

    RandomSource rng(1008);
    std::size_t add_bad = 0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t d1 = 1 + rng.below(6);
        std::size_t d2 = 1 + rng.below(6);
        if (d2 == d1) d2 = d1 % 6 + 1;
        const auto u1 = random_homogeneous(rng, d1), u2 = random_homogeneous(rng, d2);
        const Rational split = q1_norm(u1).value.value + q1_norm(u2).value.value;
        if (q1_norm_joint(u1 + u2).value.value != split || q1_norm(u1 + u2).value.value != split) ++add_bad;
    }
    std::size_t hom_bad = 0;
    for (int i = 0; i < 20; ++i) {
        const std::size_t d = 1 + rng.below(6);
        const auto u = random_homogeneous(rng, d);
        const Rational t = rng.positive_rational(7, 5);
        if (qt_norm(u, t).value.value != pow(t, static_cast<unsigned>(d)) * q1_norm(u).value.value) ++hom_bad;
    }
    const bool ok = goldens && bound_ok && add_bad == 0 && hom_bad == 0 && lp_secs < 10;
    return {ok, "Q(L1)=" + to_string(q[1]) + " Q(L2)=" + to_string(q[2]) + " Q(L3)=" + to_string(q[3]) +
                    ", L_n bound n<=8 " + (bound_ok ? "holds" : "VIOLATED") + ", additivity failures " +
                    std::to_string(add_bad) + "/50, homogeneity failures " + std::to_string(hom_bad) +
                    "/20, LP time " + fmt(lp_secs) + " s"};
}

std::pair<bool, std::string> sandwich()
{
    std::size_t cases = 0, bad = 0;
    const std::vector<Rational> ts{make_rational(1, 4), make_rational(1, 2), Rational(1), Rational(2), Rational(3)};
    auto check = [&](const FormalVectorField& f) {
        const UElement u = UElement::from_field(f);
        for (const auto& t : ts) {
            const LowerVectBound lo = q_lower_vect(u, t, 16);
            const Rational q = qt_norm(u, lo.scale).value.value;
            const Rational up = q_upper_vect(f, lo.scale).certified.value;
            ++cases;
            if (!(lo.represented.value <= q && q <= up)) ++bad;
        }
    };
    for (std::size_t n = 1; n <= 8; ++n) check(FormalVectorField::basis(n, n));
    RandomSource rng(1009);
    for (int i = 0; i < 30; ++i) check(rng.field(1 + rng.below(5)));
    return {bad == 0, std::to_string(cases) + " comparisons (L_1..L_8 and 30 random fields, 5 values of t), " +
                          std::to_string(bad) + " violations"};
}

std::pair<bool, std::string> confluence()
{
    RandomSource rng(1010);
    std::size_t bad = 0;
    const std::size_t dim = 18;
    std::vector<TriangularOperator> gens;
    for (unsigned i = 0; i <= 14; ++i) gens.push_back(i == 0 ? TriangularOperator(dim) : represent(UElement::basis(i), dim));
    for (int i = 0; i < 500; ++i) {
        const std::size_t len = 1 + rng.below(6);
        std::vector<unsigned> t;
        unsigned budget = 14;
        for (std::size_t k = 0; k < len; ++k) {
            const unsigned cap = std::min<unsigned>(6, budget - static_cast<unsigned>(len - k - 1));
            t.push_back(1 + static_cast<unsigned>(rng.below(cap)));
            budget -= t.back();
        }
        const RawProducts raw{{t, Rational(1)}};
        const UElement left = pbw_straighten(raw, RewriteStrategy::leftmost);
        TriangularOperator direct = TriangularOperator::identity(dim);
        for (unsigned k : t) direct = direct * gens[k];
        if (left != pbw_straighten(raw, RewriteStrategy::rightmost) || represent(left, dim) != direct) ++bad;
    }
    return {bad == 0, "500 products, length <= 6, degree <= 14, " + std::to_string(bad) + " disagreements"};
}

std::pair<bool, std::string> cli_contract()
{
    const CliResult a = run_cli("verify all --seed 7");
    const CliResult b = run_cli("verify all --seed 7");
    const bool same = a.exit_code == 0 && a.out == b.out && !a.out.empty();

    struct Fixture {
        std::string args;
        int expected;
    };
    const std::string quad = quote(R"j({"kind":"diffeo","order":5,"coeffs":{"2":"1"}})j");
    const std::vector<Fixture> fixtures{
        {"invert " + quad, 0},
        {"", 2},
        {"report", 2},
        {"verify nosuch", 2},
        {"invert " + quote(R"j({"kind":"diffeo","order":5,"coeffs":{"9":"1"}})j"), 2},
        {"--order 8 invert " + quad, 3},
        {"compose " + quad + " " + quote(R"j({"kind":"diffeo","order":2,"coeffs":{}})j"), 3},
        {"verify group --inject-fault", 4},
        {"verify all --inject-fault", 4},
    };
    std::size_t bad = 0;
    std::string first_bad;
    for (const auto& f : fixtures) {
        const int got = run_cli(f.args).exit_code;
        if (got != f.expected) {
            if (bad++ == 0) first_bad = "'" + f.args + "' -> " + std::to_string(got);
        }
    }
    return {same && bad == 0, std::string("verify all --seed 7 ") + (same ? "byte-identical" : "DIFFERS") + ", " +
                                  std::to_string(fixtures.size() - bad) + "/" + std::to_string(fixtures.size()) +
                                  " exit-code fixtures" + (bad ? ", first mismatch " + first_bad : "")};
}

}  // namespace

int main()
{
    criterion(1, "group laws", group_laws);
    criterion(2, "dual-oracle inversion", dual_inversion);
    criterion(3, "representation homomorphism", representation);
    criterion(4, "exp/log", exp_log);
    criterion(5, "Taylor decomposition", taylor);
    criterion(6, "norm goldens", norm_goldens);
    criterion(7, "combinatorial bound", combinatorial);
    criterion(8, "quotient norms", quotient_norms);
    criterion(9, "sandwich consistency", sandwich);
    criterion(10, "PBW confluence", confluence);
    criterion(11, "CLI determinism and exit codes", cli_contract);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
