#pragma once

// Canonical JSON forms.
//
//   net:     {"dim":d,"pieces":[{"box":[[lo,hi],...],"rule":R},...]}
//            R = {"kind":"const","value":v} | {"kind":"affine","coeffs":[...],"offset":b}
//            lo/hi are null when unbounded, v is an integer, "+inf" or "-inf"
//   element: {"dim":d,"prime":p,"terms":[{"index":[...],"num":a,"den":b},...]}
//            b > 0, gcd(a, b) = 1, terms in inverse lexicographic order
//
// The writer emits compact JSON with keys in the order above and a trailing
// newline; reading and rewriting a canonical file reproduces it byte for byte.
// Integers of any size are accepted.

#include <hlf/elements.hpp>
#include <hlf/nets.hpp>
#include <hlf/topology.hpp>

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace hlf::io {

using json = nlohmann::json;

namespace detail {

// Integers that overflow 64 bits are kept verbatim as {"$bigint": "digits"}.
inline constexpr const char* bigint_key = "$bigint";

class BigIntSax {
public:
    using number_integer_t = json::number_integer_t;
    using number_unsigned_t = json::number_unsigned_t;
    using number_float_t = json::number_float_t;
    using string_t = json::string_t;
    using binary_t = json::binary_t;

    bool null() { return put(json(nullptr)); }
    bool boolean(bool v) { return put(json(v)); }
    bool number_integer(number_integer_t v) { return put(json(v)); }
    bool number_unsigned(number_unsigned_t v) { return put(json(v)); }
    bool number_float(number_float_t v, const string_t& lexeme) {
        static const std::regex integer_lexeme("-?[0-9]+");
        if (std::regex_match(lexeme, integer_lexeme)) {
            return put(json{{bigint_key, lexeme}});
        }
        return put(json(v));
    }
    bool string(string_t& v) { return put(json(v)); }
    bool binary(binary_t& v) { return put(json::binary(v)); }
    bool start_object(std::size_t) { return open(json::object()); }
    bool key(string_t& k) {
        key_ = k;
        return true;
    }
    bool end_object() { return close(); }
    bool start_array(std::size_t) { return open(json::array()); }
    bool end_array() { return close(); }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        throw error(errc::parse_error, "malformed JSON at byte " + std::to_string(position) + ": " + ex.what());
    }

    json take() { return std::move(root_); }

private:
    json* slot() {
        if (stack_.empty()) {
            return &root_;
        }
        json& top = *stack_.back();
        if (top.is_array()) {
            top.push_back(nullptr);
            return &top.back();
        }
        return &top[key_];
    }
    bool put(json v) {
        *slot() = std::move(v);
        return true;
    }
    bool open(json v) {
        json* s = slot();
        *s = std::move(v);
        stack_.push_back(s);
        return true;
    }
    bool close() {
        stack_.pop_back();
        return true;
    }

    json root_;
    std::vector<json*> stack_;
    std::string key_;
};

[[noreturn]] inline void bad(const std::string& what) { throw error(errc::parse_error, what); }

inline const json& field(const json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) {
        bad(std::string("missing field \"") + name + "\"");
    }
    return obj.at(name);
}

} // namespace detail

/// Parses JSON text, keeping integers of any size exact.
inline json parse(const std::string& text) {
    detail::BigIntSax sax;
    json::sax_parse(text, &sax);
    return sax.take();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error(errc::parse_error, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw error(errc::parse_error, "cannot write " + path);
    }
}

// ---------------------------------------------------------------------------
// Scalars

inline Integer integer_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
    }
    if (j.is_object() && j.size() == 1 && j.contains(detail::bigint_key)) {
        return Integer(j.at(detail::bigint_key).get<std::string>());
    }
    detail::bad(std::string(what) + " must be an integer");
}

inline std::size_t size_from_json(const json& j, const char* what) {
    const Integer v = integer_from_json(j, what);
    if (v < 1 || v > 64) {
        detail::bad(std::string(what) + " must be between 1 and 64");
    }
    return static_cast<std::size_t>(v);
}

inline ExtInt extint_from_json(const json& j) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "+inf") {
            return ExtInt::pos_inf();
        }
        if (s == "-inf") {
            return ExtInt::neg_inf();
        }
        detail::bad("unknown extended integer \"" + s + "\"");
    }
    return ExtInt(integer_from_json(j, "value"));
}

inline std::string to_json(const ExtInt& v) { return v.is_finite() ? v.to_string() : "\"" + v.to_string() + "\""; }

inline std::string to_json(const QExp& v) { return to_json(v.exponent()); }

inline MultiIndex multi_index_from_json(const json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim) {
        detail::bad("index must be an array of " + std::to_string(dim) + " integers");
    }
    std::vector<Integer> coords;
    for (const auto& c : j) {
        coords.push_back(integer_from_json(c, "index coordinate"));
    }
    return MultiIndex(std::move(coords));
}

inline std::string to_json(const MultiIndex& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out += (i == 0 ? "" : ",") + a[i].str();
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// Nets

inline NetSpec net_from_json(const json& j) {
    NetSpec net;
    net.dim = size_from_json(detail::field(j, "dim"), "dim");
    const auto& pieces = detail::field(j, "pieces");
    if (!pieces.is_array()) {
        detail::bad("pieces must be an array");
    }
    for (const auto& pj : pieces) {
        Piece piece;
        const auto& box = detail::field(pj, "box");
        if (!box.is_array() || box.size() != net.dim) {
            detail::bad("box must list one interval per coordinate");
        }
        for (const auto& ij : box) {
            if (!ij.is_array() || ij.size() != 2) {
                detail::bad("interval must be [lo, hi]");
            }
            Interval iv;
            if (!ij[0].is_null()) {
                iv.lo = integer_from_json(ij[0], "lo");
            }
            if (!ij[1].is_null()) {
                iv.hi = integer_from_json(ij[1], "hi");
            }
            piece.region.box.push_back(std::move(iv));
        }
        const auto& rule = detail::field(pj, "rule");
        const auto& kind = detail::field(rule, "kind");
        if (kind == "const") {
            piece.rule = ConstantRule{extint_from_json(detail::field(rule, "value"))};
        } else if (kind == "affine") {
            AffineRule aff;
            const auto& coeffs = detail::field(rule, "coeffs");
            if (!coeffs.is_array() || coeffs.size() != net.dim) {
                detail::bad("affine coeffs must list one integer per coordinate");
            }
            for (const auto& c : coeffs) {
                aff.coeffs.push_back(integer_from_json(c, "coefficient"));
            }
            aff.offset = integer_from_json(detail::field(rule, "offset"), "offset");
            piece.rule = std::move(aff);
        } else {
            detail::bad("rule kind must be \"const\" or \"affine\"");
        }
        net.pieces.push_back(std::move(piece));
    }
    return net;
}

inline std::string to_json(const NetSpec& net) {
    std::string out = "{\"dim\":" + std::to_string(net.dim) + ",\"pieces\":[";
    for (std::size_t i = 0; i < net.pieces.size(); ++i) {
        const auto& p = net.pieces[i];
        out += i == 0 ? "{\"box\":[" : ",{\"box\":[";
        for (std::size_t c = 0; c < p.region.dim(); ++c) {
            const auto& iv = p.region.box[c];
            out += c == 0 ? "[" : ",[";
            out += iv.lo ? iv.lo->str() : "null";
            out += ",";
            out += iv.hi ? iv.hi->str() : "null";
            out += "]";
        }
        out += "],\"rule\":";
        if (const auto* k = std::get_if<ConstantRule>(&p.rule)) {
            out += "{\"kind\":\"const\",\"value\":" + to_json(k->value) + "}";
        } else {
            const auto& aff = std::get<AffineRule>(p.rule);
            out += "{\"kind\":\"affine\",\"coeffs\":" + to_json(MultiIndex(aff.coeffs)) +
                   ",\"offset\":" + aff.offset.str() + "}";
        }
        out += "}";
    }
    return out + "]}\n";
}

inline NetSpec read_net(const std::string& path) { return net_from_json(parse(read_file(path))); }

// ---------------------------------------------------------------------------
// Elements

inline LaurentElement element_from_json(const json& j) {
    const std::size_t dim = size_from_json(detail::field(j, "dim"), "dim");
    const Integer prime = integer_from_json(detail::field(j, "prime"), "prime");
    LaurentElement x(dim, prime);
    const auto& terms = detail::field(j, "terms");
    if (!terms.is_array()) {
        detail::bad("terms must be an array");
    }
    for (const auto& tj : terms) {
        MultiIndex alpha = multi_index_from_json(detail::field(tj, "index"), dim);
        const Integer num = integer_from_json(detail::field(tj, "num"), "num");
        const Integer den = integer_from_json(detail::field(tj, "den"), "den");
        if (den <= 0) {
            detail::bad("den must be positive");
        }
        if (num == 0) {
            detail::bad("zero coefficient at " + alpha.to_string());
        }
        if (x.terms().contains(alpha)) {
            detail::bad("duplicate term at " + alpha.to_string());
        }
        x.add_term(alpha, Rational(num, den));
    }
    return x;
}

inline std::string to_json(const LaurentElement& x) {
    std::string out = "{\"dim\":" + std::to_string(x.dim()) + ",\"prime\":" + x.prime().str() + ",\"terms\":[";
    bool first = true;
    for (const auto& [alpha, c] : x.terms()) {
        out += first ? "{\"index\":" : ",{\"index\":";
        first = false;
        out += to_json(alpha) + ",\"num\":" + numerator(c).str() + ",\"den\":" + denominator(c).str() + "}";
    }
    return out + "]}\n";
}

inline LaurentElement read_element(const std::string& path) { return element_from_json(parse(read_file(path))); }

} // namespace hlf::io
