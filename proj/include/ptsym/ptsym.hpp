// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ptsym/core/errors.hpp"
#include "ptsym/exact/rational.hpp"
#include "ptsym/exact/quad_ext.hpp"
#include "ptsym/exact/scalar.hpp"
#include "ptsym/exact/matrix.hpp"
#include "ptsym/exact/poly.hpp"
#include "ptsym/fock/fock_state.hpp"
#include "ptsym/fock/operator_polynomial.hpp"
#include "ptsym/fock/ladder.hpp"
#include "ptsym/group/group_element.hpp"
#include "ptsym/group/character_table.hpp"
#include "ptsym/group/projection.hpp"
#include "ptsym/models/catalog.hpp"
#include "ptsym/spectra/block.hpp"
#include "ptsym/spectra/spectrum.hpp"
#include "ptsym/spectra/charpoly.hpp"
#include "ptsym/spectra/record.hpp"
#include "ptsym/transitions/transitions.hpp"
#include "ptsym/perturb/rs_series.hpp"
#include "ptsym/oracle/solvable.hpp"
