#pragma once

// Structure of a tree permutation read off its left-to-right maxima.
//
// Left-to-right maxima (W1) and the remaining letters (W0) split G_w into a
// bipartition, and the maximal runs of W1/W0 positions (the blocks) fix every
// adjacency: a W1 letter that is not last in its block is a leaf hanging off
// the first letter of the next block, and so on. Nothing here builds the
// inversion graph.

#include <vector>

#include "permtree/permutation.hpp"

namespace permtree {

enum class Side : std::uint8_t { W0 = 0, W1 = 1 };

struct Bipartition {
    /// flags[p - 1] is true iff w_p is a left-to-right maximum.
    std::vector<bool> flags;

    bool in_w1(int pos) const { return flags[static_cast<std::size_t>(pos - 1)]; }
    int size() const { return static_cast<int>(flags.size()); }
};

Bipartition bipartition(const Permutation& perm);

struct Block {
    int first_pos;
    int last_pos;
    Side side;

    int size() const { return last_pos - first_pos + 1; }
    friend bool operator==(const Block&, const Block&) = default;
};

class BlockDecomposition {
public:
    BlockDecomposition(const Permutation& perm, std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    int count() const { return static_cast<int>(blocks_.size()); }
    const Block& operator[](int j) const { return blocks_[static_cast<std::size_t>(j)]; }

    /// Smallest (= first) and largest (= last) letters of block j (0-based).
    Letter first_letter(int j) const { return perm_->at((*this)[j].first_pos); }
    Letter last_letter(int j) const { return perm_->at((*this)[j].last_pos); }

    /// 0-based index of the block containing position pos.
    int block_of(int pos) const { return block_of_[static_cast<std::size_t>(pos - 1)]; }

    std::vector<int> sizes() const;

    const Permutation& permutation() const { return *perm_; }

private:
    const Permutation* perm_;
    std::vector<Block> blocks_;
    std::vector<int> block_of_;
};

/// Maximal runs of equal bipartition flags. The decomposition refers to
/// `perm`, which must outlive it.
BlockDecomposition blocks(const Permutation& perm);
BlockDecomposition blocks(const Permutation&& perm) = delete;

/// N(w_pos) from block sizes and boundary letters only. Sorted.
std::vector<Letter> neighbors_via_blocks(const BlockDecomposition& blocks, int pos);
std::vector<Letter> neighbors_via_blocks(const Permutation& perm, int pos);

/// deg(w_p) for each position p (index p - 1), from block sizes only.
std::vector<int> degree_sequence(const BlockDecomposition& blocks);
std::vector<int> degree_sequence(const Permutation& perm);

struct CentralPath {
    /// Spine vertices from the end in {1, w_1} to the end in {n, w_n}.
    std::vector<Letter> vertices;

    Letter low_end() const { return vertices.front(); }
    Letter high_end() const { return vertices.back(); }
    int size() const { return static_cast<int>(vertices.size()); }
};

/// Spine of the caterpillar G_w (n >= 3, throws TooSmall otherwise). For a
/// star it is the lone center.
CentralPath central_path(const BlockDecomposition& blocks);
CentralPath central_path(const Permutation& perm);

}  // namespace permtree
