#include "shf/form.hpp"

namespace shf {

std::vector<Mask> basis_masks(int n, int k) {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (degree_of(m) == k) out.push_back(m);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

}  // namespace shf
