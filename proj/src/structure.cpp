#include "permtree/structure.hpp"

#include <algorithm>

#include "permtree/errors.hpp"

namespace permtree {

Bipartition bipartition(const Permutation& perm) {
    Bipartition b;
    b.flags.reserve(static_cast<std::size_t>(perm.size()));
    Letter running_max = 0;
    for (Letter v : perm.values()) {
        b.flags.push_back(v > running_max);
        running_max = std::max(running_max, v);
    }
    return b;
}

BlockDecomposition::BlockDecomposition(const Permutation& perm, std::vector<Block> blocks)
    : perm_(&perm), blocks_(std::move(blocks)), block_of_(static_cast<std::size_t>(perm.size())) {
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        for (int p = blocks_[j].first_pos; p <= blocks_[j].last_pos; ++p) {
            block_of_[static_cast<std::size_t>(p - 1)] = static_cast<int>(j);
        }
    }
}

std::vector<int> BlockDecomposition::sizes() const {
    std::vector<int> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.size());
    return out;
}

BlockDecomposition blocks(const Permutation& perm) {
    const auto part = bipartition(perm);
    const int n = perm.size();
    if (n >= 2 && part.flags.back()) {
        throw NotATree("last letter is a left-to-right maximum: " + perm.to_string());
    }
    std::vector<Block> out;
    int start = 1;
    for (int p = 2; p <= n + 1; ++p) {
        if (p == n + 1 || part.in_w1(p) != part.in_w1(start)) {
            out.push_back({start, p - 1, part.in_w1(start) ? Side::W1 : Side::W0});
            start = p;
        }
    }
    return BlockDecomposition(perm, std::move(out));
}

std::vector<Letter> neighbors_via_blocks(const BlockDecomposition& bd, int pos) {
    const auto& perm = bd.permutation();
    const int j = bd.block_of(pos);
    const Block& block = bd[j];
    const int last = bd.count() - 1;
    std::vector<Letter> out;
    auto append_block = [&](int k) {
        for (int p = bd[k].first_pos; p <= bd[k].last_pos; ++p) out.push_back(perm.at(p));
    };

    if (block.side == Side::W1) {
        if (j + 1 > last) return out;  // n == 1
        if (pos != block.last_pos) {
            out.push_back(bd.first_letter(j + 1));                // (a)
        } else {
            append_block(j + 1);                                   // (b), (c)
            if (j + 1 != last) out.push_back(bd.first_letter(j + 3));  // (b)
        }
    } else {
        if (pos != block.first_pos) {
            out.push_back(bd.last_letter(j - 1));                 // (d)
        } else {
            append_block(j - 1);                                   // (e), (f)
            if (j >= 3) out.push_back(bd.last_letter(j - 3));     // (e)
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Letter> neighbors_via_blocks(const Permutation& perm, int pos) {
    return neighbors_via_blocks(blocks(perm), pos);
}

std::vector<int> degree_sequence(const BlockDecomposition& bd) {
    const int n = bd.permutation().size();
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    if (n == 1) {
        deg[0] = 0;
        return deg;
    }
    const int count = bd.count();
    for (int j = 0; j < count; ++j) {
        const Block& b = bd[j];
        if (b.side == Side::W1) {
            const int next = bd[j + 1].size();
            deg[static_cast<std::size_t>(b.last_pos - 1)] = next + (j + 1 == count - 1 ? 0 : 1);
        } else {
            const int prev = bd[j - 1].size();
            deg[static_cast<std::size_t>(b.first_pos - 1)] = prev + (j == 1 ? 0 : 1);
        }
    }
    return deg;
}

std::vector<int> degree_sequence(const Permutation& perm) { return degree_sequence(blocks(perm)); }

CentralPath central_path(const BlockDecomposition& bd) {
    const auto& perm = bd.permutation();
    if (perm.size() < 3) throw TooSmall("central path needs n >= 3");
    const int count = bd.count();
    const int pairs = count / 2;
    // Spine order: f_2, l_1, f_4, l_3, ..., f_2l, l_2l-1. Only the two ends can be leaves.
    CentralPath path;
    path.vertices.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < pairs; ++i) {
        const int w1 = 2 * i;
        const int w0 = 2 * i + 1;
        const int deg_first_w0 = bd[w0 - 1].size() + (i == 0 ? 0 : 1);
        const int deg_last_w1 = bd[w1 + 1].size() + (i == pairs - 1 ? 0 : 1);
        if (deg_first_w0 >= 2) path.vertices.push_back(bd.first_letter(w0));
        if (deg_last_w1 >= 2) path.vertices.push_back(bd.last_letter(w1));
    }
    return path;
}

CentralPath central_path(const Permutation& perm) { return central_path(blocks(perm)); }

}  // namespace permtree
