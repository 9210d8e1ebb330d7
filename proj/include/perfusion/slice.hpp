#pragma once

#include "perfusion/enkf.hpp"
#include "perfusion/io.hpp"
#include "perfusion/posterior.hpp"

#include <array>
#include <vector>

namespace perfusion {

struct SliceRequest {
    io::RunConfig run;
    bool record_history = false;
    std::array<double, 4> thresholds = kDefaultThresholds;
};

// Per-voxel posterior summaries in display-perfusion units; maps are
// row-major like the phantom truth map.
struct SliceResult {
    int nx = 0;
    int ny = 0;
    TimeGrid grid;
    Vector mean_p;
    Vector var_p;
    Vector prob_low;
    Vector prob_mid;
    Vector prob_high;
    std::vector<std::vector<Vector>> histories;   // empty unless requested
};

// Assimilates every voxel of the dataset independently. Voxels run in
// parallel; each derives its RNG stream from (seed, voxel index), or from
// stream 0 for all voxels when shared_noise reuses one noise realization.
SliceResult run_slice(const io::LoadedDataset& data, const SliceRequest& req);

} // namespace perfusion
