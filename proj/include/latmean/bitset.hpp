#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace latmean {

/// Fixed-capacity dynamic bitset sized at construction. Enough for desk-scale
/// point sets; all hot loops in enumeration and search run on this.
class Bits {
public:
    Bits() = default;
    explicit Bits(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

    int capacity() const { return n_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    /// this &= ~o
    Bits& and_not(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    Bits operator&(const Bits& o) const {
        Bits r = *this;
        r &= o;
        return r;
    }

    /// Complement within [0, capacity).
    Bits complement() const {
        Bits r = *this;
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    int count_and(const Bits& o) const {
        int c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += std::popcount(words_[k] & o.words_[k]);
        return c;
    }

    /// Index of the lowest set bit, or -1.
    int find_first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return static_cast<int>(k * 64 + std::countr_zero(words_[k]));
        return -1;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                f(static_cast<int>(k * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    bool operator==(const Bits&) const = default;

private:
    void trim() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace latmean
