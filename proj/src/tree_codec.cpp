#include "permtree/tree_codec.hpp"

#include <cstdlib>
#include <string_view>

#include "permtree/errors.hpp"

namespace permtree {

TreeCode::TreeCode(int n) : n_(n) {
    if (n < 1) throw InvalidArgument("tree code length needs n >= 1");
    words_.assign(static_cast<std::size_t>((length() + 63) / 64), 0);
}

TreeCode TreeCode::from_integer(int n, std::uint64_t packed) {
    TreeCode code(n);
    if (code.length() < 64 && (packed >> code.length()) != 0) {
        throw InvalidArgument("packed code has bits beyond length " + std::to_string(code.length()));
    }
    if (!code.words_.empty()) code.words_[0] = packed;
    else if (packed != 0) throw InvalidArgument("non-empty code for n <= 2");
    return code;
}

TreeCode TreeCode::from_insertions(int n, const std::vector<Insertion>& ops) {
    TreeCode code(n);
    if (static_cast<int>(ops.size()) != code.length()) {
        throw InvalidArgument("expected " + std::to_string(code.length()) + " insertions");
    }
    for (std::size_t j = 0; j < ops.size(); ++j) code.set(static_cast<int>(j), ops[j] == Insertion::I1);
    return code;
}

TreeCode TreeCode::from_hex(int n, const std::string& hex) {
    std::string_view digits = hex;
    if (digits.starts_with("0x") || digits.starts_with("0X")) digits.remove_prefix(2);
    if (digits.empty()) throw InvalidArgument("empty hex code");
    TreeCode code(n);
    int shift = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it, shift += 4) {
        const char c = *it;
        std::uint64_t nibble;
        if (c >= '0' && c <= '9') nibble = static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = static_cast<std::uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') nibble = static_cast<std::uint64_t>(c - 'A' + 10);
        else throw InvalidArgument("bad hex digit in code: " + hex);
        if (nibble == 0) continue;
        for (int b = 0; b < 4; ++b) {
            if (!((nibble >> b) & 1u)) continue;
            const int j = shift + b;
            if (j >= code.length()) throw InvalidArgument("hex code has bits beyond length: " + hex);
            code.set(j, true);
        }
    }
    return code;
}

void TreeCode::set(int j, bool value) {
    auto& w = words_[static_cast<std::size_t>(j) >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    w = value ? (w | mask) : (w & ~mask);
}

void TreeCode::set_word(std::size_t i, std::uint64_t word) {
    const std::size_t used = static_cast<std::size_t>(length()) - 64 * i;
    if (used < 64) word &= (std::uint64_t{1} << used) - 1;
    words_[i] = word;
}

std::string TreeCode::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    bool started = false;
    for (std::size_t i = words_.size(); i-- > 0;) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            const auto nibble = (words_[i] >> shift) & 0xfu;
            if (nibble == 0 && !started) continue;
            started = true;
            out.push_back(digits[nibble]);
        }
    }
    return "0x" + (started ? out : std::string("0"));
}

std::string TreeCode::to_bit_string() const {
    std::string out;
    for (int j = 0; j < length(); ++j) out.push_back(bit(j) ? '1' : '0');
    return out;
}

namespace {

void require_tree(const Permutation& perm, Check check) {
    if (perm.size() < 2) throw InvalidArgument("insertion needs n >= 2");
    if (check == Check::verify && !is_tree(perm)) throw NotATree("insertion input is not a tree permutation: " + perm.to_string());
}

}  // namespace

Permutation insert_i1(const Permutation& perm, Check check) {
    require_tree(perm, check);
    const auto v = perm.values();
    std::vector<Letter> out(v.begin(), v.end());
    out.push_back(out.back());
    out[out.size() - 2] = static_cast<Letter>(perm.size() + 1);
    return Permutation::from_trusted(std::move(out));
}

Permutation insert_i2(const Permutation& perm, Check check) {
    require_tree(perm, check);
    const auto n = static_cast<Letter>(perm.size());
    const auto v = perm.values();
    std::vector<Letter> out(v.begin(), v.end());
    for (auto& x : out) {
        if (x == n) x = n + 1;
    }
    out.push_back(n);
    return Permutation::from_trusted(std::move(out));
}

Permutation decode(const TreeCode& code) {
    const int n = code.n();
    if (n == 1) return Permutation::from_trusted({1});
    std::vector<Letter> v;
    v.reserve(static_cast<std::size_t>(n));
    v = {2, 1};
    std::size_t max_pos = 0;  // index of the current largest letter
    for (int j = 0; j < code.length(); ++j) {
        const auto m = static_cast<Letter>(v.size());
        if (code.bit(j)) {
            v.push_back(v.back());
            max_pos = v.size() - 2;
            v[max_pos] = m + 1;
        } else {
            v[max_pos] = m + 1;
            v.push_back(m);
        }
    }
    return Permutation::from_trusted(std::move(v));
}

TreeCode encode(const Permutation& perm) {
    if (!is_tree(perm)) throw NotATree("cannot encode non-tree permutation " + perm.to_string());
    const int n = perm.size();
    TreeCode code(n);
    if (n <= 2) return code;

    const auto values = perm.values();
    std::vector<Letter> v(values.begin(), values.end());
    std::vector<std::size_t> pos(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < v.size(); ++i) pos[static_cast<std::size_t>(v[i])] = i;

    for (int m = n; m >= 3; --m) {
        const auto mm = static_cast<std::size_t>(m);
        if (m - v.back() > 1) {
            // reverse I1: m sits just before the last letter
            code.set(m - 3, true);
            v[mm - 2] = v[mm - 1];
            pos[static_cast<std::size_t>(v[mm - 2])] = mm - 2;
            v.pop_back();
        } else {
            // reverse I2: drop the trailing m-1, rename m to m-1
            v.pop_back();
            const auto at = pos[mm];
            v[at] = m - 1;
            pos[mm - 1] = at;
        }
    }
    return code;
}

BigInt count_trees(int n) {
    if (n < 1) throw InvalidArgument("count_trees needs n >= 1");
    if (n == 1) return 1;
    return BigInt(1) << (n - 2);
}

int enumeration_cap() {
    if (const char* env = std::getenv("PERMTREE_ENUM_CAP")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1 && cap <= 64) return static_cast<int>(cap);
        throw InvalidConfig(std::string("PERMTREE_ENUM_CAP must be an integer in [1,64], got '") + env + "'");
    }
    return kDefaultEnumerationCap;
}

std::uint64_t code_count(int n) {
    if (n < 1 || n > 65) throw InvalidArgument("code_count needs 1 <= n <= 65");
    return n <= 2 ? 1 : std::uint64_t{1} << (n - 2);
}

TreeRange enumerate_trees(int n, int cap) {
    if (n < 1) throw InvalidArgument("enumerate_trees needs n >= 1");
    if (n > cap) {
        throw CapExceeded("enumeration of n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    return TreeRange(n, 0, code_count(n));
}

}  // namespace permtree
