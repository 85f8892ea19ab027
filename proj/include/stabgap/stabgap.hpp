#pragma once

#include "stabgap/analysis.hpp"
#include "stabgap/bath.hpp"
#include "stabgap/bitvec.hpp"
#include "stabgap/coset.hpp"
#include "stabgap/dense.hpp"
#include "stabgap/energy_barrier.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/gfunction.hpp"
#include "stabgap/gibbs.hpp"
#include "stabgap/high_temperature.hpp"
#include "stabgap/linalg.hpp"
#include "stabgap/model_io.hpp"
#include "stabgap/ordering.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"
#include "stabgap/verify.hpp"
