#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>

namespace injec {

/// Fixed-width set of colors 1..128 backed by two machine words.
class ColorSet {
public:
    static constexpr int capacity = 128;

    constexpr ColorSet() = default;

    static constexpr ColorSet full(int k) {
        ColorSet s;
        for (int c = 1; c <= k; ++c) s.insert(c);
        return s;
    }

    static constexpr ColorSet of(std::initializer_list<int> colors) {
        ColorSet s;
        for (int c : colors) s.insert(c);
        return s;
    }

    constexpr void insert(int c) { words_[word(c)] |= bit(c); }
    constexpr void erase(int c) { words_[word(c)] &= ~bit(c); }
    constexpr bool contains(int c) const { return (words_[word(c)] & bit(c)) != 0; }

    constexpr bool empty() const { return words_[0] == 0 && words_[1] == 0; }
    constexpr int size() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }

    /// Smallest member, or 0 when empty.
    constexpr int first() const {
        if (words_[0] != 0) return std::countr_zero(words_[0]) + 1;
        if (words_[1] != 0) return std::countr_zero(words_[1]) + 65;
        return 0;
    }

    /// Smallest member strictly greater than c, or 0.
    constexpr int next(int c) const {
        ColorSet rest = *this;
        for (int i = 0; i < 2; ++i) {
            int lo = 64 * i;
            if (c >= lo + 64) {
                rest.words_[static_cast<std::size_t>(i)] = 0;
            } else if (c > lo) {
                rest.words_[static_cast<std::size_t>(i)] &= ~((c - lo >= 64) ? ~0ULL : ((1ULL << (c - lo)) - 1));
            }
        }
        return rest.first();
    }

    constexpr bool intersects(const ColorSet& o) const {
        return (words_[0] & o.words_[0]) != 0 || (words_[1] & o.words_[1]) != 0;
    }

    constexpr ColorSet& operator|=(const ColorSet& o) {
        words_[0] |= o.words_[0];
        words_[1] |= o.words_[1];
        return *this;
    }
    constexpr ColorSet& operator&=(const ColorSet& o) {
        words_[0] &= o.words_[0];
        words_[1] &= o.words_[1];
        return *this;
    }
    friend constexpr ColorSet operator|(ColorSet a, const ColorSet& b) { return a |= b; }
    friend constexpr ColorSet operator&(ColorSet a, const ColorSet& b) { return a &= b; }
    /// Members of a not in b.
    friend constexpr ColorSet operator-(ColorSet a, const ColorSet& b) {
        a.words_[0] &= ~b.words_[0];
        a.words_[1] &= ~b.words_[1];
        return a;
    }

    friend constexpr auto operator<=>(const ColorSet&, const ColorSet&) = default;

    constexpr std::uint64_t word_at(int i) const { return words_[static_cast<std::size_t>(i)]; }

    template <class Fn>
    constexpr void for_each(Fn&& fn) const {
        for (int c = first(); c != 0; c = next(c)) fn(c);
    }

    std::string str() const {
        std::string s = "{";
        bool firstItem = true;
        for_each([&](int c) {
            if (!firstItem) s += ",";
            s += std::to_string(c);
            firstItem = false;
        });
        return s + "}";
    }

private:
    static constexpr std::size_t word(int c) { return static_cast<std::size_t>((c - 1) >> 6); }
    static constexpr std::uint64_t bit(int c) { return 1ULL << ((c - 1) & 63); }

    std::array<std::uint64_t, 2> words_{0, 0};
};

} // namespace injec
