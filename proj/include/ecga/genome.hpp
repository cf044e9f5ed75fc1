// genome.hpp — packed bit-vector genomes and evaluated populations.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecga/random.hpp"

namespace ecga {

// Fixed-length bit vector.  Index 0 is the leftmost gene; bit i is stored
// in word i/64 at bit offset i%64.  Immutable by convention once evaluated.
class Genome {
public:
    Genome() = default;
    explicit Genome(std::size_t length)
        : length_(length), words_((length + 63) / 64, 0) {}

    static Genome random(std::size_t length, RandomSource& rng);
    static Genome from_string(std::string_view bits);  // e.g. "10110"

    std::size_t length() const { return length_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    Genome complemented() const;
    std::size_t popcount() const;
    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return words_; }

    bool operator==(const Genome&) const = default;

private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

// Number of 1-alleles among the given loci.  Out-of-range or repeated
// indices are contract violations (throws std::logic_error).
std::size_t unitation(const Genome& g, std::span<const std::uint32_t> loci);

// Packs the alleles at `loci` into an integer, first locus most
// significant, so enumerating indices 0..2^k-1 walks the bit-sequences in
// lexicographic order.  Loci must be in range; not re-checked here.
std::uint32_t sequence_index(const Genome& g, std::span<const std::uint32_t> loci);

// Inverse of sequence_index for the same loci.
void write_sequence(Genome& g, std::span<const std::uint32_t> loci, std::uint32_t seq);

struct EvaluatedGenome {
    Genome genome;
    double fitness = 0.0;
};

struct Population {
    std::vector<EvaluatedGenome> members;

    std::size_t size() const { return members.size(); }
    std::size_t genome_length() const {
        return members.empty() ? 0 : members.front().genome.length();
    }
    // Highest fitness, first index on ties.
    const EvaluatedGenome& best() const;
    bool uniform_fitness() const;
};

}  // namespace ecga
