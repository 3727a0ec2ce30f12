#include "pdwa/encoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdwa {

void TupleWord::push_letter(const std::vector<int>& letter) {
    if ((int)letter.size() != arity) throw std::invalid_argument("letter arity mismatch");
    for (int d : letter) {
        if (d < 0 || d >= base) throw std::invalid_argument("digit out of range");
        digits.push_back(d);
    }
    ++len;
}

std::vector<Int> decode_nat(const TupleWord& w) {
    std::vector<Int> out(w.arity, Int(0));
    for (size_t i = 0; i < w.len; ++i)
        for (int t = 0; t < w.arity; ++t) out[t] = out[t] * w.base + w.digit(i, t);
    return out;
}

std::vector<Int> decode_int(const TupleWord& w) {
    if (w.empty()) throw std::invalid_argument("empty word does not represent a tuple");
    std::vector<Int> out(w.arity, Int(0));
    Int shift = pow_int(w.base, (unsigned long)(w.len - 1));
    for (size_t i = 1; i < w.len; ++i)
        for (int t = 0; t < w.arity; ++t) out[t] = out[t] * w.base + w.digit(i, t);
    for (int t = 0; t < w.arity; ++t)
        if (w.digit(0, t) != 0) out[t] -= shift;
    return out;
}

TupleWord encode_int(const std::vector<Int>& z, int base) {
    int r = (int)z.size();
    TupleWord w(r, base);
    // minimal digit count after the sign letter, per track
    size_t n = 0;
    for (const Int& v : z) {
        size_t k = 0;
        Int p = 1;
        while (v >= 0 ? p <= v : p + v < 0) {
            p *= base;
            ++k;
        }
        n = std::max(n, k);
    }
    Int top = pow_int(base, (unsigned long)n);
    std::vector<std::vector<int>> tracks(r);
    std::vector<int> sign(r);
    for (int t = 0; t < r; ++t) {
        Int v = z[t];
        sign[t] = v < 0 ? base - 1 : 0;
        if (v < 0) v += top;
        std::vector<int>& ds = tracks[t];
        ds.assign(n, 0);
        for (size_t i = n; i-- > 0;) {
            ds[i] = (int)mod_floor(v, base).get_si();
            v /= base;
        }
    }
    w.push_letter(sign);
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> letter(r);
        for (int t = 0; t < r; ++t) letter[t] = tracks[t][i];
        w.push_letter(letter);
    }
    return w;
}

std::vector<int> sign_vector(const std::vector<int>& letter) {
    std::vector<int> out(letter.size());
    for (size_t i = 0; i < letter.size(); ++i) out[i] = letter[i] == 0 ? 0 : -1;
    return out;
}

TupleWord sign_extend(const TupleWord& w, size_t k) {
    if (w.empty()) throw std::invalid_argument("empty word");
    std::vector<int> repeat(w.arity);
    for (int t = 0; t < w.arity; ++t) repeat[t] = w.digit(0, t) == 0 ? 0 : w.base - 1;
    TupleWord out(w.arity, w.base);
    for (size_t i = 0; i < k + 1; ++i) out.push_letter(repeat);
    for (size_t i = 1; i < w.len; ++i) {
        std::vector<int> letter(w.arity);
        for (int t = 0; t < w.arity; ++t) letter[t] = w.digit(i, t);
        out.push_letter(letter);
    }
    return out;
}

std::string word_text(const TupleWord& w) {
    std::string out;
    for (size_t i = 0; i < w.len; ++i) {
        if (i) out += ';';
        for (int t = 0; t < w.arity; ++t) {
            if (t) out += ',';
            out += std::to_string(w.digit(i, t));
        }
    }
    return out;
}

TupleWord parse_word(const std::string& text, int base) {
    std::vector<std::vector<int>> letters;
    std::vector<int> cur;
    std::string num;
    auto flush_digit = [&]() {
        if (num.empty()) throw std::invalid_argument("malformed word: empty digit");
        int d = std::stoi(num);
        if (d < 0 || d >= base) throw std::invalid_argument("digit out of range for base");
        cur.push_back(d);
        num.clear();
    };
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            num += c;
        } else if (c == ',') {
            flush_digit();
        } else if (c == ';') {
            flush_digit();
            letters.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            throw std::invalid_argument(std::string("malformed word: character '") + c + "'");
        }
    }
    flush_digit();
    letters.push_back(cur);
    int arity = (int)letters[0].size();
    TupleWord w(arity, base);
    for (auto& l : letters) {
        if ((int)l.size() != arity) throw std::invalid_argument("letters have differing arity");
        w.push_letter(l);
    }
    return w;
}

}  // namespace pdwa
