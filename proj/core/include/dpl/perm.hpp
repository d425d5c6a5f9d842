#ifndef DPL_PERM_HPP
#define DPL_PERM_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpl {

using Point = uint16_t;

/*
 * Permutation of {0,...,n-1}, stored as its image vector.
 *
 * Composition is left-to-right: (a * b)(x) = b(a(x)), i.e. a acts first.
 * All groups in this project act on the right, matching the orbit and
 * stabilizer-chain code.
 */
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<Point> images) : img_(std::move(images)) {}

    static Perm identity(size_t n) {
        std::vector<Point> v(n);
        std::iota(v.begin(), v.end(), Point{0});
        return Perm(std::move(v));
    }

    // Cycle notation helper, mainly for tests: Perm::cycles(5, {{0,1},{2,3,4}})
    static Perm cycles(size_t n, std::initializer_list<std::initializer_list<Point>> cs) {
        Perm p = identity(n);
        for (auto& c : cs) {
            if (c.size() < 2) continue;
            auto it = c.begin();
            Point first = *it;
            Point prev = first;
            ++it;
            for (; it != c.end(); ++it) {
                p.img_[prev] = *it;
                prev = *it;
            }
            p.img_[prev] = first;
        }
        if (!p.is_valid()) throw std::invalid_argument("overlapping cycles");
        return p;
    }

    size_t degree() const { return img_.size(); }
    Point operator()(Point x) const { return img_[x]; }
    Point apply(Point x) const { return img_[x]; }

    const std::vector<Point>& images() const { return img_; }

    bool is_valid() const {
        std::vector<char> seen(img_.size(), 0);
        for (Point x : img_) {
            if (x >= img_.size() || seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    }

    bool is_identity() const {
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Perm operator*(const Perm& other) const {
        std::vector<Point> v(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) v[i] = other.img_[img_[i]];
        return Perm(std::move(v));
    }

    // this := this * other, writing in place through a scratch buffer
    void mul_inplace(const Perm& other, std::vector<Point>& scratch) {
        scratch.resize(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) scratch[i] = other.img_[img_[i]];
        img_.swap(scratch);
    }

    Perm inverse() const {
        std::vector<Point> v(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) v[img_[i]] = static_cast<Point>(i);
        return Perm(std::move(v));
    }

    // conjugate g^h = h^-1 g h  (maps h-images of g-cycles)
    Perm conj(const Perm& h) const {
        std::vector<Point> v(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) v[h.img_[i]] = h.img_[img_[i]];
        return Perm(std::move(v));
    }

    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator!=(const Perm& o) const { return img_ != o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }

    // sorted multiset of cycle lengths, fixed points included
    std::vector<uint16_t> cycle_type() const;

    uint64_t order() const;

    Perm power(int64_t e) const;

    size_t count_fixed() const {
        size_t c = 0;
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] == i) ++c;
        return c;
    }

    std::vector<Point> fixed_points() const {
        std::vector<Point> f;
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] == i) f.push_back(static_cast<Point>(i));
        return f;
    }

    uint64_t hash() const {
        uint64_t h = 1469598103934665603ull;
        for (Point x : img_) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }

    std::string to_string() const; // disjoint cycle notation

private:
    std::vector<Point> img_;
};

struct PermHash {
    size_t operator()(const Perm& p) const { return static_cast<size_t>(p.hash()); }
};

} // namespace dpl

#endif
