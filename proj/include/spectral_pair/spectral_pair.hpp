#ifndef SPECTRAL_PAIR_SPECTRAL_PAIR_HPP
#define SPECTRAL_PAIR_SPECTRAL_PAIR_HPP

#include "spectral_pair/error.hpp"
#include "spectral_pair/tolerance.hpp"
#include "spectral_pair/numerics.hpp"
#include "spectral_pair/curve.hpp"
#include "spectral_pair/spectral_map.hpp"
#include "spectral_pair/reconstruction.hpp"
#include "spectral_pair/cubic_geometry.hpp"
#include "spectral_pair/group_action.hpp"
#include "spectral_pair/sampling.hpp"

#endif  // SPECTRAL_PAIR_SPECTRAL_PAIR_HPP
