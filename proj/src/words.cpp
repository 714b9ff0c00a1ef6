#include <functional>
#include "momenta/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace momenta {

Word::Word(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
        if (c < 'A' || c > 'Z') throw std::invalid_argument("word: bad letter '" + std::string(1, c) + "'");
}

Word Word::from_string(std::string_view s) {
    if (s == "1") return Word();
    return Word(std::string(s));
}

int Word::max_letter() const {
    int m = -1;
    for (char c : letters_) m = std::max(m, letter_index(c));
    return m;
}

// Booth's algorithm.
std::size_t least_rotation(std::string_view s) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        char sj = s[j % n];
        long i = f[j - k - 1];
        while (i != -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j - i - 1;
            i = f[i];
        }
        if (i == -1 && sj != s[(k + i + 1) % n]) {
            if (sj < s[(k + i + 1) % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

Word rotate(const Word& w, std::size_t k) {
    if (w.empty()) return w;
    k %= w.size();
    return Word(w.str().substr(k) + w.str().substr(0, k));
}

CyclicWord::CyclicWord(const Word& w) : canonical_(rotate(w, least_rotation(w.str()))) {}

CyclicWord canonicalize(const Word& w) { return CyclicWord(w); }

Word reverse(const Word& w) {
    std::string s = w.str();
    std::reverse(s.begin(), s.end());
    return Word(std::move(s));
}

std::vector<Word> all_words(int m, int len) {
    std::vector<Word> out;
    std::vector<int> digits(len, 0);
    while (true) {
        std::string s(len, 'A');
        for (int i = 0; i < len; ++i) s[i] = letter_char(digits[i]);
        out.emplace_back(std::move(s));
        int i = len - 1;
        while (i >= 0 && digits[i] == m - 1) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
    }
    return out;
}

std::vector<Word> basis(int m, int max_len) {
    std::vector<Word> out;
    for (int len = 0; len <= max_len; ++len) {
        auto ws = all_words(m, len);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

std::vector<CyclicWord> necklaces(int m, int len) {
    std::vector<CyclicWord> out;
    if (len == 0) {
        out.emplace_back(Word());
        return out;
    }
    // Fredricksen-Kessler-Maiorana: least rotations in lexicographic order.
    std::vector<int> a(len + 1, 0);
    std::function<void(int, int)> gen = [&](int t, int p) {
        if (t > len) {
            if (len % p == 0) {
                Word w;
                for (int i = 1; i <= len; ++i) w.push_back(a[i]);
                out.emplace_back(w);
            }
            return;
        }
        a[t] = a[t - p];
        gen(t + 1, p);
        for (int j = a[t - p] + 1; j < m; ++j) {
            a[t] = j;
            gen(t + 1, t);
        }
    };
    gen(1, 1);
    return out;
}

}  // namespace momenta
