// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include "hybridmd/difftest.hpp"
#include "hybridmd/eigensolve.hpp"
#include "hybridmd/encoding.hpp"
#include "hybridmd/errors.hpp"
#include "hybridmd/matrix.hpp"
#include "hybridmd/optimize.hpp"
#include "hybridmd/parallel.hpp"
#include "hybridmd/pipeline.hpp"
#include "hybridmd/readout.hpp"
#include "hybridmd/rng.hpp"
#include "hybridmd/statevector.hpp"
#include "hybridmd/swap_test.hpp"
#include "hybridmd/textio.hpp"
#include "hybridmd/trajectory.hpp"
