#pragma once

#include <cstdint>
#include <random>

#include "prodiff/freealg.hpp"
#include "prodiff/rational.hpp"
#include "prodiff/series.hpp"

namespace prodiff {

/// Seeded source of small random rationals and algebraic objects.
///
/// Reductions use plain modulo on mt19937_64 output (whose sequence is fixed
/// by the standard), so a seed reproduces the same instances everywhere.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

    /// p/q with |p| <= max_num, 1 <= q <= max_den.
    Rational rational(unsigned max_num = 9, unsigned max_den = 5)
    {
        const auto p = static_cast<std::int64_t>(below(2 * max_num + 1)) - static_cast<std::int64_t>(max_num);
        const auto q = static_cast<std::int64_t>(below(max_den)) + 1;
        return make_rational(p, q);
    }

    Rational positive_rational(unsigned max_num = 9, unsigned max_den = 5)
    {
        const auto p = static_cast<std::int64_t>(below(max_num)) + 1;
        const auto q = static_cast<std::int64_t>(below(max_den)) + 1;
        return make_rational(p, q);
    }

    FormalDiffeo diffeo(std::size_t order)
    {
        std::vector<Rational> tail(order - 1);
        for (auto& a : tail) a = rational();
        return FormalDiffeo(order, std::move(tail));
    }

    FormalVectorField field(std::size_t order)
    {
        std::vector<Rational> c(order);
        for (auto& p : c) p = rational();
        return FormalVectorField(order, std::move(c));
    }

    Word word(std::size_t max_length)
    {
        const std::size_t len = static_cast<std::size_t>(below(max_length + 1));
        std::vector<std::uint8_t> letters(len);
        for (auto& l : letters) l = static_cast<std::uint8_t>(1 + below(2));
        return Word(std::move(letters));
    }

    NCPolynomial polynomial(std::size_t terms, std::size_t max_length)
    {
        NCPolynomial p;
        for (std::size_t i = 0; i < terms; ++i) p.add(word(max_length), rational());
        return p;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace prodiff
