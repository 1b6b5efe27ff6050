#include "prodiff/freealg.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "prodiff/simplex.hpp"

namespace prodiff {

// ---------------------------------------------------------------------------
// Words and the free algebra

Word::Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters))
{
    for (auto l : letters_) {
        if (l != 1 && l != 2) throw PreconditionError("word letters must be 1 or 2");
    }
}

std::size_t Word::count(std::uint8_t letter) const
{
    return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), letter));
}

Word Word::operator*(const Word& other) const
{
    std::vector<std::uint8_t> l = letters_;
    l.insert(l.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(l));
}

std::string to_string(const Word& w)
{
    if (w.length() == 0) return "1";
    std::string out;
    for (auto l : w.letters()) out += l == 1 ? "w1" : "w2";
    return out;
}

std::vector<Word> words_of_degree(std::size_t k)
{
    std::vector<Word> out;
    std::vector<std::uint8_t> current;
    std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (std::uint8_t letter : {std::uint8_t{1}, std::uint8_t{2}}) {
            if (letter > remaining) continue;
            current.push_back(letter);
            rec(remaining - letter);
            current.pop_back();
        }
    };
    rec(k);
    return out;
}

NCPolynomial NCPolynomial::word(const Word& w, const Rational& c)
{
    NCPolynomial p;
    p.add(w, c);
    return p;
}

void NCPolynomial::add(const Word& w, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& other) const
{
    NCPolynomial out = *this;
    for (const auto& [w, c] : other.terms_) out.add(w, c);
    return out;
}

NCPolynomial NCPolynomial::operator*(const NCPolynomial& other) const
{
    NCPolynomial out;
    for (const auto& [w1, c1] : terms_) {
        for (const auto& [w2, c2] : other.terms_) out.add(w1 * w2, c1 * c2);
    }
    return out;
}

NormValue r_norm(const NCPolynomial& p, const Rational& t1, const Rational& t2)
{
    if (t1 <= 0 || t2 <= 0) throw PreconditionError("R norm parameters must be > 0");
    Rational sum = 0;
    for (const auto& [w, c] : p.terms()) {
        sum += abs(c) * pow(t1, static_cast<unsigned>(w.count(1))) * pow(t2, static_cast<unsigned>(w.count(2)));
    }
    return {sum, NormKind::exact, std::nullopt};
}

// ---------------------------------------------------------------------------
// PBW monomials and U(vect)

PBWMonomial::PBWMonomial(std::vector<unsigned> indices) : indices_(std::move(indices))
{
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 1) throw PreconditionError("PBW indices must be >= 1");
        if (i > 0 && indices_[i - 1] > indices_[i]) {
            throw PreconditionError("PBW monomial indices must be weakly increasing");
        }
    }
}

std::size_t PBWMonomial::degree() const
{
    std::size_t d = 0;
    for (auto i : indices_) d += i;
    return d;
}

std::string to_string(const PBWMonomial& m)
{
    std::string out = "(";
    for (std::size_t i = 0; i < m.indices().size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(m.indices()[i]);
    }
    return out + ")";
}

PBWMonomial parse_pbw_monomial(const std::string& text)
{
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
        throw ParseError("PBW monomial '" + text + "' must look like (i1,i2,...)");
    }
    const std::string body = text.substr(1, text.size() - 2);
    std::vector<unsigned> idx;
    if (!body.empty()) {
        std::stringstream ss(body);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("PBW monomial '" + text + "' has a non-numeric index");
            }
            idx.push_back(static_cast<unsigned>(std::stoul(part)));
        }
    }
    std::vector<unsigned> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != idx || (!idx.empty() && idx.front() == 0)) {
        throw ParseError("PBW monomial '" + text + "' must have weakly increasing indices >= 1");
    }
    return PBWMonomial(std::move(idx));
}

UElement UElement::unit(const Rational& c)
{
    UElement u;
    u.add(PBWMonomial{}, c);
    return u;
}

UElement UElement::basis(unsigned n, const Rational& c)
{
    UElement u;
    u.add(PBWMonomial({n}), c);
    return u;
}

UElement UElement::from_field(const FormalVectorField& field)
{
    UElement u;
    for (std::size_t j = 1; j <= field.order(); ++j) u.add(PBWMonomial({static_cast<unsigned>(j)}), field.coeff(j));
    return u;
}

void UElement::add(const PBWMonomial& m, const Rational& c)
{
    if (c == 0) return;
    const std::size_t d = m.degree();
    auto& comp = components_[d];
    auto [it, inserted] = comp.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) comp.erase(it);
    }
    if (comp.empty()) components_.erase(d);
}

UElement UElement::component(std::size_t degree) const
{
    UElement out;
    if (auto it = components_.find(degree); it != components_.end()) out.components_[degree] = it->second;
    return out;
}

std::size_t UElement::max_degree() const
{
    return components_.empty() ? 0 : components_.rbegin()->first;
}

UElement UElement::operator+(const UElement& other) const
{
    UElement out = *this;
    for (const auto& [d, comp] : other.components_) {
        for (const auto& [m, c] : comp) out.add(m, c);
    }
    return out;
}

UElement UElement::operator-(const UElement& other) const { return *this + other * Rational(-1); }

UElement UElement::operator*(const Rational& c) const
{
    UElement out;
    for (const auto& [d, comp] : components_) {
        for (const auto& [m, v] : comp) out.add(m, v * c);
    }
    return out;
}

UElement UElement::operator*(const UElement& other) const
{
    RawProducts raw;
    for (const auto& [d1, comp1] : components_) {
        for (const auto& [m1, c1] : comp1) {
            for (const auto& [d2, comp2] : other.components_) {
                for (const auto& [m2, c2] : comp2) {
                    std::vector<unsigned> key = m1.indices();
                    key.insert(key.end(), m2.indices().begin(), m2.indices().end());
                    raw[key] += c1 * c2;
                }
            }
        }
    }
    return pbw_straighten(raw);
}

UElement UElement::scaled(const Rational& t) const
{
    UElement out;
    for (const auto& [d, comp] : components_) {
        const Rational f = pow(t, static_cast<unsigned>(d));
        for (const auto& [m, v] : comp) out.add(m, v * f);
    }
    return out;
}

namespace {

std::size_t inversions(const std::vector<unsigned>& t)
{
    std::size_t inv = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) inv += t[i] > t[j] ? 1 : 0;
    }
    return inv;
}

// Rewrites only produce strictly smaller keys, so processing the largest key
// first visits every tuple once.
using WorkKey = std::tuple<std::size_t, std::size_t, std::vector<unsigned>>;

}  // namespace

UElement pbw_straighten(const RawProducts& raw, RewriteStrategy strategy)
{
    std::map<WorkKey, Rational, std::greater<>> pending;
    auto push = [&pending](std::vector<unsigned> t, const Rational& c) {
        if (c == 0) return;
        const std::size_t len = t.size();
        const std::size_t inv = inversions(t);
        pending[WorkKey{len, inv, std::move(t)}] += c;
    };
    for (const auto& [t, c] : raw) {
        if (std::any_of(t.begin(), t.end(), [](unsigned i) { return i == 0; })) {
            throw PreconditionError("L_0 is not an element of vect");
        }
        push(t, c);
    }

    UElement out;
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const auto& [len, inv, t] = node.key();
        const Rational c = node.mapped();
        if (c == 0) continue;
        if (inv == 0) {
            out.add(PBWMonomial(t), c);
            continue;
        }
        std::size_t pos = 0;
        if (strategy == RewriteStrategy::leftmost) {
            while (t[pos] <= t[pos + 1]) ++pos;
        } else {
            pos = t.size() - 2;
            while (t[pos] <= t[pos + 1]) --pos;
        }
        const unsigned m = t[pos];
        const unsigned n = t[pos + 1];
        std::vector<unsigned> swapped = t;
        std::swap(swapped[pos], swapped[pos + 1]);
        push(std::move(swapped), c);
        std::vector<unsigned> merged;
        merged.reserve(t.size() - 1);
        merged.insert(merged.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(pos));
        merged.push_back(m + n);
        merged.insert(merged.end(), t.begin() + static_cast<std::ptrdiff_t>(pos) + 2, t.end());
        push(std::move(merged), c * (static_cast<long>(n) - static_cast<long>(m)));
    }
    return out;
}

UElement pi_map(const Word& w)
{
    std::vector<unsigned> t(w.letters().begin(), w.letters().end());
    return pbw_straighten(RawProducts{{t, Rational(1)}});
}

UElement pi_map(const NCPolynomial& p)
{
    RawProducts raw;
    for (const auto& [w, c] : p.terms()) {
        raw[std::vector<unsigned>(w.letters().begin(), w.letters().end())] += c;
    }
    return pbw_straighten(raw);
}

// ---------------------------------------------------------------------------
// Quotient norms

namespace {

struct DegreeSystem {
    std::vector<Word> words;
    std::vector<UElement::Component> images;
};

const DegreeSystem& degree_system(std::size_t k)
{
    static std::mutex mutex;
    static std::map<std::size_t, DegreeSystem> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    DegreeSystem sys;
    sys.words = words_of_degree(k);
    for (const auto& w : sys.words) {
        const UElement img = pi_map(w);
        auto comp = img.components().find(k);
        sys.images.push_back(comp == img.components().end() ? UElement::Component{} : comp->second);
    }
    return cache.emplace(k, std::move(sys)).first->second;
}

DegreeCertificate solve_degree(std::size_t k, const UElement::Component& target, PivotRule rule)
{
    DegreeCertificate cert;
    cert.degree = k;
    if (k == 0) {
        const Rational c = target.begin()->second;
        cert.value = abs(c);
        cert.combination.emplace_back(Word{}, c);
        return cert;
    }
    const DegreeSystem& sys = degree_system(k);
    std::set<PBWMonomial> basis;
    for (const auto& img : sys.images) {
        for (const auto& [m, c] : img) basis.insert(m);
    }
    for (const auto& [m, c] : target) {
        if (!basis.count(m)) {
            throw PreconditionError("element is not in the U(vect) image of degree-" + std::to_string(k) +
                                    " words: monomial " + to_string(m));
        }
    }
    const std::size_t nw = sys.words.size();
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const auto& m : basis) {
        std::vector<Rational> row(2 * nw);
        for (std::size_t w = 0; w < nw; ++w) {
            auto it = sys.images[w].find(m);
            if (it == sys.images[w].end()) continue;
            row[w] = it->second;
            row[nw + w] = -it->second;
        }
        a.push_back(std::move(row));
        auto t = target.find(m);
        b.push_back(t == target.end() ? Rational(0) : t->second);
    }
    const std::vector<Rational> cost(2 * nw, Rational(1));
    const LpResult lp = solve_lp(a, b, cost, rule);
    if (lp.status != LpStatus::optimal) {
        throw PreconditionError("element is not in the U(vect) image of degree-" + std::to_string(k) + " words");
    }
    cert.value = lp.objective;
    for (std::size_t w = 0; w < nw; ++w) {
        const Rational c = lp.x[w] - lp.x[nw + w];
        if (c != 0) cert.combination.emplace_back(sys.words[w], c);
    }
    return cert;
}

}  // namespace

QNormResult q1_norm(const UElement& u, PivotRule rule)
{
    QNormResult out{{Rational(0), NormKind::exact, std::nullopt}, {}};
    for (const auto& [k, comp] : u.components()) {
        DegreeCertificate cert = solve_degree(k, comp, rule);
        out.value.value += cert.value;
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

QNormResult q1_norm_joint(const UElement& u)
{
    const std::size_t top = u.max_degree();
    std::vector<Word> words;
    std::vector<UElement> images;
    std::set<PBWMonomial> rows;
    for (std::size_t k = 0; k <= top; ++k) {
        for (auto& w : words_of_degree(k)) {
            images.push_back(pi_map(w));
            for (const auto& [d, comp] : images.back().components()) {
                for (const auto& [m, c] : comp) rows.insert(m);
            }
            words.push_back(std::move(w));
        }
    }
    for (const auto& [d, comp] : u.components()) {
        for (const auto& [m, c] : comp) {
            if (!rows.count(m)) throw PreconditionError("monomial " + to_string(m) + " is outside the image");
        }
    }
    const std::size_t nw = words.size();
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const auto& m : rows) {
        std::vector<Rational> row(2 * nw);
        for (std::size_t w = 0; w < nw; ++w) {
            const auto comp = images[w].components().find(m.degree());
            if (comp == images[w].components().end()) continue;
            auto it = comp->second.find(m);
            if (it == comp->second.end()) continue;
            row[w] = it->second;
            row[nw + w] = -it->second;
        }
        a.push_back(std::move(row));
        Rational target = 0;
        if (auto comp = u.components().find(m.degree()); comp != u.components().end()) {
            if (auto it = comp->second.find(m); it != comp->second.end()) target = it->second;
        }
        b.push_back(target);
    }
    const LpResult lp = solve_lp(a, b, std::vector<Rational>(2 * nw, Rational(1)));
    if (lp.status != LpStatus::optimal) throw PreconditionError("element is outside the image of pi");
    QNormResult out{{lp.objective, NormKind::exact, std::nullopt}, {}};
    DegreeCertificate cert;
    cert.degree = top;
    cert.value = lp.objective;
    for (std::size_t w = 0; w < nw; ++w) {
        const Rational c = lp.x[w] - lp.x[nw + w];
        if (c != 0) cert.combination.emplace_back(words[w], c);
    }
    out.certificates.push_back(std::move(cert));
    return out;
}

std::vector<PBWMonomial> pbw_basis(std::size_t d)
{
    std::vector<PBWMonomial> out;
    std::vector<unsigned> current;
    std::function<void(unsigned, std::size_t)> rec = [&](unsigned smallest, std::size_t remaining) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (unsigned i = smallest; i <= remaining; ++i) {
            current.push_back(i);
            rec(i, remaining - i);
            current.pop_back();
        }
    };
    rec(1, d);
    std::sort(out.begin(), out.end());
    return out;
}

QNormResult qt_norm(const UElement& u, const Rational& t, PivotRule rule)
{
    if (t <= 0) throw PreconditionError("t must be > 0, got " + to_string(t));
    return q1_norm(u.scaled(t), rule);
}

UpperVectBound q_upper_vect(const FormalVectorField& field, const Rational& t)
{
    if (t <= 0) throw PreconditionError("t must be > 0, got " + to_string(t));
    Rational rest = 0;
    const Rational two_t = 2 * t;
    for (std::size_t j = 2; j <= field.order(); ++j) {
        const Rational p = field.coeff(j);
        if (p == 0) continue;
        rest += abs(p) * pow(two_t, static_cast<unsigned>(j)) /
                Rational(factorial(static_cast<unsigned>(j - 2)));
    }
    rest /= 4;
    const Rational p1 = abs(field.coeff(1));
    return {{t * p1 + rest, NormKind::upper_bound, std::nullopt}, p1 + rest};
}

Rational ln_upper_bound(std::size_t n, const Rational& t)
{
    if (n == 0) throw PreconditionError("L_0 is not an element of vect");
    if (n == 1) return t;
    return pow(Rational(2), static_cast<unsigned>(n - 2)) * pow(t, static_cast<unsigned>(n)) /
           Rational(factorial(static_cast<unsigned>(n - 2)));
}

TriangularOperator represent(const UElement& u, std::size_t dim)
{
    if (dim == 0) throw PreconditionError("representation dimension must be >= 1");
    const std::size_t n = dim - 1;
    std::map<unsigned, TriangularOperator> generators;
    auto generator = [&](unsigned i) -> const TriangularOperator& {
        auto it = generators.find(i);
        if (it == generators.end()) {
            const std::size_t order = std::max<std::size_t>(i, n);
            it = generators.emplace(i, rep_field(FormalVectorField::basis(order, i), n)).first;
        }
        return it->second;
    };
    TriangularOperator sum(dim);
    for (const auto& [d, comp] : u.components()) {
        for (const auto& [m, c] : comp) {
            TriangularOperator prod = TriangularOperator::identity(dim);
            for (unsigned i : m.indices()) prod = prod * generator(i);
            sum += prod * c;
        }
    }
    return sum;
}

LowerVectBound q_lower_vect(const UElement& u, const Rational& t, std::size_t max_column)
{
    if (t <= 0) throw PreconditionError("t must be > 0, got " + to_string(t));
    const std::size_t dim = max_column + std::max<std::size_t>(u.max_degree(), 2) + 1;

    const FieldNormBound l1 = field_norm_bound(FormalVectorField::basis(1, 1), t);
    const FieldNormBound l2 = field_norm_bound(FormalVectorField::basis(2, 2), t);
    const Rational s1 = l1.upper.value;
    const Rational s2 = l2.upper.value;
    const Rational scale = s2 <= s1 * s1 ? s1 : sqrt_upper(s2);

    LowerVectBound out{
        operator_norm_trunc(represent(u, dim), t, max_column),
        scale,
        operator_norm_trunc(represent(UElement::basis(1), dim), t, max_column),
        operator_norm_trunc(represent(UElement::basis(2), dim), t, max_column),
        t / 2,
    };
    return out;
}

InclusionReport inclusion_check(const Rational& t, std::size_t nmax, std::size_t columns)
{
    if (t <= 0) throw PreconditionError("t must be > 0, got " + to_string(t));
    InclusionReport report{t, {}, {}};
    for (std::size_t n = 1; n <= nmax; ++n) {
        InclusionRow row;
        row.n = n;
        const UElement ln = UElement::basis(static_cast<unsigned>(n));
        row.q1 = q1_norm(ln).value.value;
        row.qt = pow(t, static_cast<unsigned>(n)) * row.q1;
        row.upper = ln_upper_bound(n, t);
        row.upper_displayed = n == 1 ? Rational(1) : row.upper;
        const Rational nf1 = Rational(factorial(static_cast<unsigned>(n + 1)));
        row.w_t = pow(t, static_cast<unsigned>(n)) / nf1;
        row.w_2t = pow(2 * t, static_cast<unsigned>(n)) / nf1;
        row.lower_certificate = q_lower_vect(ln, t, columns).represented.value;
        row.upper_ok = row.qt <= row.upper;
        row.lower_ok = row.qt >= row.w_t && row.qt >= row.lower_certificate;
        row.contested_lower_ok = row.qt >= row.w_2t;
        if (!row.upper_ok) report.violations.push_back("n=" + std::to_string(n) + ": Q_[t](L_n) above upper bound");
        if (!row.lower_ok) report.violations.push_back("n=" + std::to_string(n) + ": Q_[t](L_n) below lower bound");
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace prodiff
