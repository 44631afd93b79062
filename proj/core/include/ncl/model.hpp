#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ncl/error.hpp"

namespace ncl {

// Symbols are referenced by position everywhere; labels are opaque text used
// only at the I/O boundary. The construction order of an Alphabet fixes the
// row/column indexing of every matrix built over it.
class Alphabet {
  public:
    explicit Alphabet(std::vector<std::string> symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& label(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& labels() const { return symbols_; }

    // throws UNKNOWN_SYMBOL
    int index(std::string_view label) const;
    bool contains(std::string_view label) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

  private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

// A block of symbols, stored as alphabet indices.
using Sequence = std::vector<int>;

inline constexpr double kProbTolerance = 1e-9;

class Pmf {
  public:
    // Rejects (never renormalizes) negative entries and sums off by more
    // than kProbTolerance.
    Pmf(Alphabet alphabet, std::vector<double> probs);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<double>& probs() const { return probs_; }
    double operator[](int i) const { return probs_.at(static_cast<std::size_t>(i)); }
    int size() const { return alphabet_.size(); }

  private:
    Alphabet alphabet_;
    std::vector<double> probs_;
};

Pmf make_pmf(Alphabet alphabet, std::vector<double> probs);

// Total map between finite alphabets with its preimage partition.
class DetFunction {
  public:
    // table[i] = codomain index of the image of domain symbol i; -1 marks an
    // unmapped symbol and triggers PARTIAL_TABLE.
    DetFunction(Alphabet domain, Alphabet codomain, std::vector<int> table);

    const Alphabet& domain() const { return domain_; }
    const Alphabet& codomain() const { return codomain_; }
    int operator()(int x) const { return table_.at(static_cast<std::size_t>(x)); }
    const std::vector<int>& table() const { return table_; }

    // Preimage class of codomain symbol y (empty when y is not in the image).
    const std::vector<int>& preimage(int y) const { return preimages_.at(static_cast<std::size_t>(y)); }
    // Codomain indices with nonempty preimage, ascending.
    const std::vector<int>& image() const { return image_; }
    bool injective() const;

  private:
    Alphabet domain_;
    Alphabet codomain_;
    std::vector<int> table_;
    std::vector<std::vector<int>> preimages_;
    std::vector<int> image_;
};

DetFunction make_det_function(Alphabet domain, Alphabet codomain, std::vector<int> table);

// Row-stochastic matrix: row x is the output distribution given input x.
class DMChannel {
  public:
    DMChannel(Alphabet input, Alphabet output, std::vector<std::vector<double>> matrix);

    const Alphabet& input() const { return input_; }
    const Alphabet& output() const { return output_; }
    std::span<const double> row(int x) const { return matrix_.at(static_cast<std::size_t>(x)); }
    double prob(int x, int z) const {
        return matrix_.at(static_cast<std::size_t>(x)).at(static_cast<std::size_t>(z));
    }
    const std::vector<std::vector<double>>& matrix() const { return matrix_; }

  private:
    Alphabet input_;
    Alphabet output_;
    std::vector<std::vector<double>> matrix_;
};

DMChannel make_channel(Alphabet input, Alphabet output, std::vector<std::vector<double>> matrix);

// The 0/1 deterministic channel of a function: matrix[x][f(x)] = 1.
DMChannel fn_as_channel(const DetFunction& f);

// Binary symmetric channel on {"0","1"}; throws BAD_P outside [0,1].
DMChannel bsc(double p);

// Channel composition: first A->B then second B->C, i.e. the matrix product.
DMChannel compose(const DMChannel& first, const DMChannel& second);

// A source, the function it should compute, and the noisy device that
// actually runs. All three share the input alphabet.
struct NoisyComputationInstance {
    Pmf source;
    DetFunction f;
    DMChannel F;

    NoisyComputationInstance(Pmf source_in, DetFunction f_in, DMChannel F_in);
};

// Per-symbol application of f to a block; length preserved.
Sequence apply_block(const DetFunction& f, const Sequence& xseq);

// Draws each output symbol independently from the row of the corresponding
// input symbol. Pure function of (channel, input, seed): bit-exact
// reproducible across runs and platforms.
Sequence sample_block(const DMChannel& channel, const Sequence& xseq, std::uint64_t seed);

// Mixed-radix rank of a sequence, most significant digit first, so numeric
// order on ranks is lexicographic order on sequences.
std::uint64_t seq_rank(const Sequence& seq, int base);
Sequence seq_unrank(std::uint64_t rank, int length, int base);

// "a.b.c" label form used by code files and CSV output.
std::string seq_to_labels(const Sequence& seq, const Alphabet& alphabet);
Sequence seq_from_labels(std::string_view text, const Alphabet& alphabet);

} // namespace ncl
