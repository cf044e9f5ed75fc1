#include "ecga/genome.hpp"

#include <bit>
#include <stdexcept>

namespace ecga {

Genome Genome::random(std::size_t length, RandomSource& rng) {
    Genome g(length);
    for (auto& w : g.words_) w = rng.next_u64();
    const std::size_t tail = length & 63;
    if (tail != 0 && !g.words_.empty())
        g.words_.back() &= (std::uint64_t{1} << tail) - 1;
    return g;
}

Genome Genome::from_string(std::string_view bits) {
    Genome g(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            g.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("genome string must contain only 0/1");
    }
    return g;
}

Genome Genome::complemented() const {
    Genome g(*this);
    for (auto& w : g.words_) w = ~w;
    const std::size_t tail = length_ & 63;
    if (tail != 0 && !g.words_.empty())
        g.words_.back() &= (std::uint64_t{1} << tail) - 1;
    return g;
}

std::size_t Genome::popcount() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::string Genome::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::size_t unitation(const Genome& g, std::span<const std::uint32_t> loci) {
    std::size_t count = 0;
    for (std::uint32_t locus : loci) {
        if (locus >= g.length())
            throw std::logic_error("unitation: locus out of range");
        count += g.get(locus) ? 1 : 0;
    }
    for (std::size_t i = 1; i < loci.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (loci[i] == loci[j])
                throw std::logic_error("unitation: repeated locus");
    return count;
}

std::uint32_t sequence_index(const Genome& g, std::span<const std::uint32_t> loci) {
    std::uint32_t idx = 0;
    for (std::uint32_t locus : loci) idx = (idx << 1) | (g.get(locus) ? 1u : 0u);
    return idx;
}

void write_sequence(Genome& g, std::span<const std::uint32_t> loci, std::uint32_t seq) {
    const std::size_t k = loci.size();
    for (std::size_t j = 0; j < k; ++j)
        g.set(loci[j], (seq >> (k - 1 - j)) & 1u);
}

const EvaluatedGenome& Population::best() const {
    if (members.empty()) throw std::logic_error("best() on empty population");
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i].fitness > members[best_i].fitness) best_i = i;
    return members[best_i];
}

bool Population::uniform_fitness() const {
    if (members.empty()) return true;
    const double f = members.front().fitness;
    for (const auto& m : members)
        if (m.fitness != f) return false;
    return true;
}

}  // namespace ecga
