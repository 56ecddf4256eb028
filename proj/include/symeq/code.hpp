#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symeq {

using Symbol = std::uint8_t;

// Detector outputs are stored as one 64-bit mask per slot, which caps the
// alphabet everywhere in the library.
inline constexpr int kMaxAlphabet = 64;

/// A q-ary block code of length n. Symbols are 0-based, words are distinct.
class Code {
public:
    Code(int n, int q, std::vector<Symbol> symbols, std::string id = {});

    static Code from_words(int n, int q, const std::vector<std::vector<int>>& words,
                           std::string id = {});

    int length() const noexcept { return n_; }
    int alphabet() const noexcept { return q_; }
    std::size_t size() const noexcept { return symbols_.size() / static_cast<std::size_t>(n_); }

    std::span<const Symbol> word(std::size_t index) const;
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    const std::string& id() const noexcept { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }

private:
    int n_;
    int q_;
    std::vector<Symbol> symbols_;
    std::string id_;
};

struct SymbolStats {
    std::vector<int> counts;     // counts[s] = occurrences of s
    int swt = 0;                 // max of counts
    std::vector<int> partition;  // counts sorted descending
};

SymbolStats symbol_stats(std::span<const Symbol> word, int q);

int hamming(std::span<const Symbol> a, std::span<const Symbol> b);

/// True when every symbol occurs floor(n/q) or ceil(n/q) times.
bool is_equitable_word(std::span<const Symbol> word, int q);

/// Membership flags for the families of codes generalizing permutation codes.
struct ClassLabel {
    int bounded_symbol_weight = 0;
    bool constant_composition = false;
    bool constant_partition = false;
    bool minimum_symbol_weight = false;
    bool equitable = false;
    bool fpa = false;
    bool injection = false;
    bool permutation = false;
};

ClassLabel classify(const Code& code);

/// Exhaustive minimum pairwise Hamming distance. Throws undefined_distance
/// for codes with fewer than two words.
int min_distance(const Code& code);

/// E(e;C) for e = 1..q together with the narrowband capability c(C).
struct CapabilityProfile {
    int n = 0;
    int q = 0;
    int d = 0;
    std::vector<int> e_table;       // e_table[e-1] = E(e;C)
    std::optional<int> capability;  // empty when E(q;C) < d

    int at(int e) const { return e_table.at(static_cast<std::size_t>(e - 1)); }
};

/// Per-word sums of the e largest symbol counts, maximized over the code.
std::vector<int> narrowband_profile(const Code& code);

CapabilityProfile capability_profile(const Code& code, int d);

/// Smallest e with table[e-1] >= d, if any.
std::optional<int> first_reaching(std::span<const int> table, int d);

/// Partition <r^(q-t) (r-1)^t> forced on every equitable word.
std::vector<int> equitable_partition(int n, int q);

int f_star(int n, int q, int e);
std::vector<int> f_star_table(int n, int q);

struct GrowthOrder {
    enum class Kind { equal, f_less, g_less };
    Kind kind = Kind::equal;
    int index = 0;  // 1-based first point of divergence; 0 when equal
};

GrowthOrder growth_compare(std::span<const int> f, std::span<const int> g);

/// Same comparison restricted to profiles of one family F_{n,q}.
GrowthOrder growth_compare(const CapabilityProfile& f, const CapabilityProfile& g);

/// E(e;L,C): the largest number of coordinates of any codeword hit by e
/// narrowband tones whose common duration is drawn from `durations`.
int windowed_capability(const Code& code, int e, std::span<const int> durations);
std::vector<int> windowed_profile(const Code& code, std::span<const int> durations);

}  // namespace symeq
