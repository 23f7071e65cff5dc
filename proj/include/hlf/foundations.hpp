#pragma once

// Extended integers, multi-indices and index slices.
//
// Every integer in the library is arbitrary precision. Exponents, valuations
// and coordinates all share the same Integer type.

#include <hlf/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace hlf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of Z ∪ {+∞, −∞}, totally ordered with −∞ < n < +∞.
class ExtInt {
public:
    enum class kind : std::uint8_t { neg_inf, finite, pos_inf };

    ExtInt() = default;
    ExtInt(Integer v) : value_(std::move(v)) {} // NOLINT(google-explicit-constructor)
    template <class T>
        requires std::is_integral_v<T>
    ExtInt(T v) : value_(v) {} // NOLINT(google-explicit-constructor)

    static ExtInt pos_inf() { return ExtInt(kind::pos_inf); }
    static ExtInt neg_inf() { return ExtInt(kind::neg_inf); }

    [[nodiscard]] kind which() const noexcept { return kind_; }
    [[nodiscard]] bool is_finite() const noexcept { return kind_ == kind::finite; }
    [[nodiscard]] bool is_pos_inf() const noexcept { return kind_ == kind::pos_inf; }
    [[nodiscard]] bool is_neg_inf() const noexcept { return kind_ == kind::neg_inf; }

    /// The finite value. Calling this on an infinity is a logic error.
    [[nodiscard]] const Integer& value() const {
        if (!is_finite()) {
            throw error(errc::invalid_argument, "value() of an infinite ExtInt");
        }
        return value_;
    }

    ExtInt operator-() const {
        switch (kind_) {
            case kind::pos_inf: return neg_inf();
            case kind::neg_inf: return pos_inf();
            case kind::finite: break;
        }
        return ExtInt(Integer(-value_));
    }

    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        return a.kind_ == b.kind_ && (a.kind_ != kind::finite || a.value_ == b.value_);
    }

    friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
        if (a.kind_ != b.kind_) {
            return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        }
        if (a.kind_ != kind::finite || a.value_ == b.value_) {
            return std::strong_ordering::equal;
        }
        return a.value_ < b.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    [[nodiscard]] std::string to_string() const {
        switch (kind_) {
            case kind::pos_inf: return "+inf";
            case kind::neg_inf: return "-inf";
            case kind::finite: break;
        }
        return value_.str();
    }

private:
    explicit ExtInt(kind k) : kind_(k) {}

    kind kind_ = kind::finite;
    Integer value_ = 0;
};

/// Sum in Z ∪ {±∞}. An infinity absorbs finite values; +∞ + −∞ is an error.
inline ExtInt extint_add(const ExtInt& a, const ExtInt& b) {
    if (a.is_finite() && b.is_finite()) {
        return ExtInt(Integer(a.value() + b.value()));
    }
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
        throw error(errc::indeterminate_sum, "+inf + -inf");
    }
    return a.is_finite() ? b : a;
}

inline ExtInt operator+(const ExtInt& a, const ExtInt& b) { return extint_add(a, b); }
inline ExtInt operator-(const ExtInt& a, const ExtInt& b) { return extint_add(a, -b); }

inline const ExtInt& min(const ExtInt& a, const ExtInt& b) { return b < a ? b : a; }
inline const ExtInt& max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

/// A point of Z^d, d ≥ 1.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    MultiIndex(std::initializer_list<long long> coords) {
        coords_.reserve(coords.size());
        for (long long c : coords) {
            coords_.emplace_back(c);
        }
    }

    /// The zero multi-index of dimension d.
    static MultiIndex zero(std::size_t d) { return MultiIndex(std::vector<Integer>(d, Integer(0))); }

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    [[nodiscard]] const std::vector<Integer>& coords() const noexcept { return coords_; }
    [[nodiscard]] auto begin() const noexcept { return coords_.begin(); }
    [[nodiscard]] auto end() const noexcept { return coords_.end(); }

    MultiIndex operator-() const {
        MultiIndex out = *this;
        for (auto& c : out.coords_) {
            c = -c;
        }
        return out;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        require_same_dim(a, b);
        MultiIndex out = a;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            out.coords_[i] += b.coords_[i];
        }
        return out;
    }

    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) { return a + (-b); }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    [[nodiscard]] std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i != 0) {
                out += ',';
            }
            out += coords_[i].str();
        }
        return out + ")";
    }

    static void require_same_dim(const MultiIndex& a, const MultiIndex& b) {
        if (a.dim() != b.dim()) {
            throw error(errc::dimension_mismatch,
                        "multi-indices of dimension " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
        }
    }

private:
    std::vector<Integer> coords_;
};

/// Inverse lexicographic order: the last differing coordinate decides.
inline std::strong_ordering invlex_compare(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex::require_same_dim(a, b);
    for (std::size_t i = a.dim(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

struct InvLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return invlex_compare(a, b) < 0; }
};

/// The index sets I(i_{l+1},…,i_d) and I(k, i_{l+1},…,i_d): coordinates
/// after position l are pinned to `tail`; with `scan` set, coordinate l is
/// pinned too. Positions are 1-based.
struct SliceSpec {
    std::size_t l = 1;
    std::vector<Integer> tail;
    std::optional<Integer> scan;
};

inline bool slice_contains(const SliceSpec& s, const MultiIndex& a) {
    const std::size_t d = a.dim();
    if (s.l < 1 || s.l > d || s.tail.size() != d - s.l) {
        throw error(errc::dimension_mismatch, "slice at l=" + std::to_string(s.l) + " with tail of length " +
                                                  std::to_string(s.tail.size()) + " against dimension " +
                                                  std::to_string(d));
    }
    for (std::size_t i = 0; i < s.tail.size(); ++i) {
        if (a[s.l + i] != s.tail[i]) {
            return false;
        }
    }
    return !s.scan || a[s.l - 1] == *s.scan;
}

} // namespace hlf
