#include "dpl/perm.hpp"

#include <numeric>
#include <sstream>

namespace dpl {

std::vector<uint16_t> Perm::cycle_type() const {
    std::vector<uint16_t> lens;
    std::vector<char> seen(img_.size(), 0);
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        uint16_t len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            ++len;
            j = img_[j];
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

uint64_t Perm::order() const {
    uint64_t o = 1;
    for (uint16_t len : cycle_type()) o = std::lcm<uint64_t>(o, len);
    return o;
}

Perm Perm::power(int64_t e) const {
    if (img_.empty()) return *this;
    uint64_t o = order();
    int64_t m = e % static_cast<int64_t>(o);
    if (m < 0) m += static_cast<int64_t>(o);
    Perm acc = Perm::identity(img_.size());
    Perm base = *this;
    uint64_t k = static_cast<uint64_t>(m);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

std::string Perm::to_string() const {
    std::ostringstream os;
    std::vector<char> seen(img_.size(), 0);
    bool any = false;
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == i) {
            seen[i] = 1;
            continue;
        }
        any = true;
        os << '(';
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) os << ' ';
            os << j;
            first = false;
            j = img_[j];
        }
        os << ')';
    }
    if (!any) return "()";
    return os.str();
}

} // namespace dpl
