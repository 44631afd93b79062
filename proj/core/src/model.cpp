#include "ncl/model.hpp"

#include <cmath>
#include <cstdlib>

#include "ncl/rng.hpp"

namespace ncl {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw Error(Errc::validation_error, "alphabet needs at least one symbol");
    }
    for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
        auto [it, inserted] = index_.emplace(symbols_[static_cast<std::size_t>(i)], i);
        if (!inserted) {
            throw Error(Errc::validation_error, "duplicate symbol '" + symbols_[static_cast<std::size_t>(i)] + "'");
        }
    }
}

int Alphabet::index(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) {
        throw Error(Errc::unknown_symbol, "symbol '" + std::string(label) + "' not in alphabet");
    }
    return it->second;
}

bool Alphabet::contains(std::string_view label) const {
    return index_.find(std::string(label)) != index_.end();
}

Pmf::Pmf(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    if (probs_.size() != static_cast<std::size_t>(alphabet_.size())) {
        throw Error(Errc::validation_error, "pmf length does not match alphabet size");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (probs_[i] < 0.0) {
            throw Error(Errc::negative_prob,
                        "probability of '" + alphabet_.label(static_cast<int>(i)) + "' is negative");
        }
        sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > kProbTolerance) {
        throw Error(Errc::bad_sum, "probabilities sum to " + std::to_string(sum));
    }
}

Pmf make_pmf(Alphabet alphabet, std::vector<double> probs) {
    return Pmf(std::move(alphabet), std::move(probs));
}

DetFunction::DetFunction(Alphabet domain, Alphabet codomain, std::vector<int> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
    if (table_.size() != static_cast<std::size_t>(domain_.size())) {
        throw Error(Errc::partial_table, "table does not cover the domain");
    }
    preimages_.assign(static_cast<std::size_t>(codomain_.size()), {});
    for (int x = 0; x < domain_.size(); ++x) {
        int y = table_[static_cast<std::size_t>(x)];
        if (y < 0) {
            throw Error(Errc::partial_table, "domain symbol '" + domain_.label(x) + "' is unmapped");
        }
        if (y >= codomain_.size()) {
            throw Error(Errc::unknown_symbol, "table maps '" + domain_.label(x) + "' outside the codomain");
        }
        preimages_[static_cast<std::size_t>(y)].push_back(x);
    }
    for (int y = 0; y < codomain_.size(); ++y) {
        if (!preimages_[static_cast<std::size_t>(y)].empty()) image_.push_back(y);
    }
}

bool DetFunction::injective() const {
    for (const auto& cls : preimages_) {
        if (cls.size() > 1) return false;
    }
    return true;
}

DetFunction make_det_function(Alphabet domain, Alphabet codomain, std::vector<int> table) {
    return DetFunction(std::move(domain), std::move(codomain), std::move(table));
}

DMChannel::DMChannel(Alphabet input, Alphabet output, std::vector<std::vector<double>> matrix)
    : input_(std::move(input)), output_(std::move(output)), matrix_(std::move(matrix)) {
    if (matrix_.size() != static_cast<std::size_t>(input_.size())) {
        throw Error(Errc::validation_error, "matrix row count does not match input alphabet");
    }
    for (int x = 0; x < input_.size(); ++x) {
        const auto& row = matrix_[static_cast<std::size_t>(x)];
        if (row.size() != static_cast<std::size_t>(output_.size())) {
            throw Error(Errc::validation_error,
                        "row '" + input_.label(x) + "' does not match output alphabet");
        }
        double sum = 0.0;
        for (double v : row) {
            if (v < 0.0) {
                throw Error(Errc::negative_prob, "row '" + input_.label(x) + "' has a negative entry");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kProbTolerance) {
            throw Error(Errc::bad_row_sum,
                        "row '" + input_.label(x) + "' sums to " + std::to_string(sum));
        }
    }
}

DMChannel make_channel(Alphabet input, Alphabet output, std::vector<std::vector<double>> matrix) {
    return DMChannel(std::move(input), std::move(output), std::move(matrix));
}

DMChannel fn_as_channel(const DetFunction& f) {
    std::vector<std::vector<double>> matrix(
        static_cast<std::size_t>(f.domain().size()),
        std::vector<double>(static_cast<std::size_t>(f.codomain().size()), 0.0));
    for (int x = 0; x < f.domain().size(); ++x) {
        matrix[static_cast<std::size_t>(x)][static_cast<std::size_t>(f(x))] = 1.0;
    }
    return DMChannel(f.domain(), f.codomain(), std::move(matrix));
}

DMChannel bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(Errc::bad_p, "crossover probability " + std::to_string(p) + " outside [0,1]");
    }
    Alphabet bits({"0", "1"});
    return DMChannel(bits, bits, {{1.0 - p, p}, {p, 1.0 - p}});
}

DMChannel compose(const DMChannel& first, const DMChannel& second) {
    if (first.output() != second.input()) {
        throw Error(Errc::alphabet_mismatch, "composition alphabets do not line up");
    }
    std::vector<std::vector<double>> matrix(
        static_cast<std::size_t>(first.input().size()),
        std::vector<double>(static_cast<std::size_t>(second.output().size()), 0.0));
    for (int x = 0; x < first.input().size(); ++x) {
        for (int y = 0; y < first.output().size(); ++y) {
            const double pxy = first.prob(x, y);
            if (pxy == 0.0) continue;
            for (int z = 0; z < second.output().size(); ++z) {
                matrix[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)] += pxy * second.prob(y, z);
            }
        }
    }
    return DMChannel(first.input(), second.output(), std::move(matrix));
}

NoisyComputationInstance::NoisyComputationInstance(Pmf source_in, DetFunction f_in, DMChannel F_in)
    : source(std::move(source_in)), f(std::move(f_in)), F(std::move(F_in)) {
    if (f.domain() != source.alphabet() || F.input() != source.alphabet()) {
        throw Error(Errc::alphabet_mismatch, "source, f and F must share the input alphabet");
    }
}

Sequence apply_block(const DetFunction& f, const Sequence& xseq) {
    Sequence out;
    out.reserve(xseq.size());
    for (int x : xseq) {
        if (x < 0 || x >= f.domain().size()) {
            throw Error(Errc::unknown_symbol, "sequence symbol index out of range");
        }
        out.push_back(f(x));
    }
    return out;
}

Sequence sample_block(const DMChannel& channel, const Sequence& xseq, std::uint64_t seed) {
    Rng rng(seed);
    Sequence out;
    out.reserve(xseq.size());
    for (int x : xseq) {
        if (x < 0 || x >= channel.input().size()) {
            throw Error(Errc::unknown_symbol, "sequence symbol index out of range");
        }
        out.push_back(rng.categorical(channel.row(x)));
    }
    return out;
}

std::uint64_t seq_rank(const Sequence& seq, int base) {
    std::uint64_t rank = 0;
    for (int s : seq) {
        rank = rank * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(s);
    }
    return rank;
}

Sequence seq_unrank(std::uint64_t rank, int length, int base) {
    Sequence seq(static_cast<std::size_t>(length), 0);
    for (int j = length - 1; j >= 0; --j) {
        seq[static_cast<std::size_t>(j)] = static_cast<int>(rank % static_cast<std::uint64_t>(base));
        rank /= static_cast<std::uint64_t>(base);
    }
    return seq;
}

std::string seq_to_labels(const Sequence& seq, const Alphabet& alphabet) {
    std::string out;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (j > 0) out.push_back('.');
        out += alphabet.label(seq[j]);
    }
    return out;
}

Sequence seq_from_labels(std::string_view text, const Alphabet& alphabet) {
    Sequence seq;
    if (text.empty()) return seq;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = text.find('.', start);
        std::string_view token = (dot == std::string_view::npos)
                                     ? text.substr(start)
                                     : text.substr(start, dot - start);
        seq.push_back(alphabet.index(token));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return seq;
}

} // namespace ncl
