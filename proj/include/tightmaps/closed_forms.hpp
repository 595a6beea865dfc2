#pragma once

#include <vector>

#include "tightmaps/disk.hpp"
#include "tightmaps/table.hpp"

namespace tightmaps {

// All lengths are actual boundary lengths. DiskData needs derivatives cached
// as far as each formula uses them.

Series pants(int l1, int l2, int l3, const DiskData& data);
// T_{l1,l2|l3}, requires l1 + l2 > l3
Series strict_pants(int l1, int l2, int l3, const DiskData& data);
// T_{l1|l2,l3}, requires l1 > l2 + l3
Series double_strict(int l1, int l2, int l3, const DiskData& data);
// (0,0) gives ln(R/t)
Series cylinder(int l1, int l2, const DiskData& data);

// s further t-derivatives; n = 1 means the antiderivative without constant
Series collet_fusy(const std::vector<int>& L, int s, const DiskData& data);

Series tgen(const std::vector<int>& l, const DiskData& data);
// l[0], l[1] odd, the rest even
Series tgen_quasi(const std::vector<int>& l, const DiskData& data);

Series genus1_F(const DiskData& data);
class TrumpetMatrix;
// general weights; needs every face weight the operator D_l touches
Series genus1_T(int l, const DiskData& data, const TrumpetMatrix& A);
Series genus1_T_bipartite(int l, const DiskData& data);

// closed-form genus-0 value for n = 2 or 3, used as a base by the builder
Series genus0_closed(const Lengths& l, const DiskData& data);

}  // namespace tightmaps
