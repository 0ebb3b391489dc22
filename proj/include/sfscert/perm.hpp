#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sfscert {

// A permutation of {0,1,2,3}, stored as the list of images.
class Perm4 {
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr Perm4(int a, int b, int c, int d)
        : img_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {
        if (!valid())
            throw std::invalid_argument("Perm4: not a permutation of 0..3");
    }

    static Perm4 from_string(const std::string& s) {
        if (s.size() != 4)
            throw std::invalid_argument("Perm4: expected 4 digits");
        int v[4];
        for (int i = 0; i < 4; ++i) {
            if (s[i] < '0' || s[i] > '3')
                throw std::invalid_argument("Perm4: digit out of range");
            v[i] = s[i] - '0';
        }
        return Perm4(v[0], v[1], v[2], v[3]);
    }

    // The k-th permutation in lexicographic order, k in [0,24).
    static Perm4 nth(int k) {
        int digits[4];
        int pool[4] = {0, 1, 2, 3};
        int avail = 4;
        int fact[4] = {6, 2, 1, 1};
        for (int i = 0; i < 4; ++i) {
            int q = k / fact[i];
            k %= fact[i];
            digits[i] = pool[q];
            for (int j = q; j + 1 < avail; ++j) pool[j] = pool[j + 1];
            --avail;
        }
        return Perm4(digits[0], digits[1], digits[2], digits[3]);
    }

    // Inverse of nth().
    int index() const {
        int fact[4] = {6, 2, 1, 1};
        int k = 0;
        for (int i = 0; i < 4; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j)
                if (img_[j] < img_[i]) ++smaller;
            k += smaller * fact[i];
        }
        return k;
    }

    constexpr int operator[](int i) const { return img_[i]; }

    // (p * q)(i) = p(q(i))
    Perm4 operator*(const Perm4& q) const {
        return Perm4(img_[q[0]], img_[q[1]], img_[q[2]], img_[q[3]]);
    }

    Perm4 inverse() const {
        int inv[4];
        for (int i = 0; i < 4; ++i) inv[img_[i]] = i;
        return Perm4(inv[0], inv[1], inv[2], inv[3]);
    }

    int sign() const {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[i] > img_[j]) ++inversions;
        return (inversions % 2) ? -1 : 1;
    }

    bool is_identity() const { return img_[0] == 0 && img_[1] == 1 && img_[2] == 2 && img_[3] == 3; }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
        return s;
    }

    friend bool operator==(const Perm4& a, const Perm4& b) { return a.img_ == b.img_; }
    friend bool operator!=(const Perm4& a, const Perm4& b) { return !(a == b); }
    friend bool operator<(const Perm4& a, const Perm4& b) { return a.img_ < b.img_; }

    // Transposition of a and b.
    static Perm4 swap(int a, int b) {
        int v[4] = {0, 1, 2, 3};
        v[a] = b;
        v[b] = a;
        return Perm4(v[0], v[1], v[2], v[3]);
    }

private:
    constexpr bool valid() const {
        int seen = 0;
        for (int i = 0; i < 4; ++i) {
            if (img_[i] > 3) return false;
            seen |= 1 << img_[i];
        }
        return seen == 15;
    }

    std::array<std::uint8_t, 4> img_;
};

// Local numbering of the six edges of a tetrahedron.
inline constexpr int kEdgeVerts[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

inline int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    int e = table[a][b];
    if (e < 0) throw std::invalid_argument("edge_index: equal endpoints");
    return e;
}

// Vertices of face f (the face opposite vertex f) in increasing order.
inline std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> out{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != f) out[k++] = i;
    return out;
}

// Quad types: quad k separates {0, k+1} from the other two vertices.
inline int quad_separating(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 0) return b - 1;
    // {a,b} does not contain 0; the complementary pair does
    int rest = 6 - a - b;  // 0 + other
    return rest - 1;
}

// Whether vertex v lies on the "low" side (the side containing vertex 0) of quad k.
inline bool quad_low_side(int k, int v) { return v == 0 || v == k + 1; }

}  // namespace sfscert
