#pragma once

#include <cstddef>
#include <vector>

#include "confmac/dm.hpp"
#include "confmac/gaussian.hpp"
#include "confmac/geometry.hpp"

namespace confmac {

struct EncoderConferencing {
  double cbar12 = 0.0, cbar21 = 0.0;  // may be +inf

  void validate() const;
};

// {(R1,R2) >= 0 : (R12+R21, R1-R12, R2-R21) in region3d}, R12 = min(R1, cbar12), R21 = min(R2, cbar21).
// The map is affine on four pieces; each piece's preimage is clipped exactly and the pieces are hulled.
RateRegion cme_transform(const RateRegion& region3d, const EncoderConferencing& enc);

// Same set by scanning a points x points grid over the bounding box; an inner approximation.
RateRegion cme_transform_scan(const RateRegion& region3d, const EncoderConferencing& enc, std::size_t points = 257);

RateRegion cme_outer(const GaussianCmChannel& ch, const EncoderConferencing& enc, const GridSpec& grid,
                     double clip = kDefaultClip);

// degraded: zero the C21 link first (throws PreconditionError when the channel is not degraded).
RateRegion cme_outer(const DmChannel& ch, const std::vector<DmInputDistribution>& inputs, double c12, double c21,
                     const EncoderConferencing& enc, bool degraded, double clip = kDefaultClip);

}  // namespace confmac
