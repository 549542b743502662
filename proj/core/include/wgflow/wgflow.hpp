#ifndef WGFLOW_WGFLOW_HPP
#define WGFLOW_WGFLOW_HPP

#include "wgflow/density.hpp"
#include "wgflow/dispersion.hpp"
#include "wgflow/ensemble.hpp"
#include "wgflow/errors.hpp"
#include "wgflow/params.hpp"
#include "wgflow/quadrature.hpp"
#include "wgflow/trajectory.hpp"
#include "wgflow/velocity.hpp"
#include "wgflow/wavefunction.hpp"

#endif
