#pragma once

#include "tsfem/assembly.hpp"
#include "tsfem/curved.hpp"
#include "tsfem/dual.hpp"
#include "tsfem/error.hpp"
#include "tsfem/errors.hpp"
#include "tsfem/fespace.hpp"
#include "tsfem/levelset.hpp"
#include "tsfem/manufactured.hpp"
#include "tsfem/mesh.hpp"
#include "tsfem/reference.hpp"
#include "tsfem/solver.hpp"
#include "tsfem/sparse.hpp"
#include "tsfem/study.hpp"
#include "tsfem/tensor.hpp"
