#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace momenta {

// Letters are stored as 'A' + index so words print and hash as plain strings.
using Letter = int;

inline char letter_char(Letter l) { return static_cast<char>('A' + l); }
inline Letter letter_index(char c) { return c - 'A'; }

class Word {
public:
    Word() = default;
    explicit Word(std::string letters);

    static Word from_string(std::string_view s);  // "1" or "" is the empty word

    const std::string& str() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letter_index(letters_[i]); }
    int max_letter() const;

    Word operator+(const Word& o) const { return Word(letters_ + o.letters_); }
    Word substr(std::size_t pos, std::size_t n = std::string::npos) const {
        return Word(letters_.substr(pos, n));
    }
    void push_back(Letter l) { letters_.push_back(letter_char(l)); }

    std::string to_string() const { return letters_.empty() ? "1" : letters_; }

    auto operator<=>(const Word&) const = default;

private:
    std::string letters_;
};

// A rotation class, keyed by its least rotation.
class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(const Word& w);

    const Word& word() const { return canonical_; }
    const std::string& str() const { return canonical_.str(); }
    std::size_t size() const { return canonical_.size(); }
    bool empty() const { return canonical_.empty(); }
    std::string to_string() const { return canonical_.to_string(); }

    auto operator<=>(const CyclicWord&) const = default;

private:
    Word canonical_;
};

Word rotate(const Word& w, std::size_t k);
std::size_t least_rotation(std::string_view s);
CyclicWord canonicalize(const Word& w);
Word reverse(const Word& w);
std::vector<Word> basis(int m, int max_len);
std::vector<Word> all_words(int m, int len);
// Canonical representatives of all rotation classes of the given length.
std::vector<CyclicWord> necklaces(int m, int len);

// Shortest-first, then lexicographic.
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
    bool operator()(const CyclicWord& a, const CyclicWord& b) const { return (*this)(a.word(), b.word()); }
};

}  // namespace momenta

template <>
struct std::hash<momenta::Word> {
    std::size_t operator()(const momenta::Word& w) const noexcept { return std::hash<std::string>{}(w.str()); }
};
template <>
struct std::hash<momenta::CyclicWord> {
    std::size_t operator()(const momenta::CyclicWord& w) const noexcept { return std::hash<std::string>{}(w.str()); }
};
