#pragma once

#include "bethe.hpp"
#include "builder.hpp"
#include "circuit.hpp"
#include "circuit_text.hpp"
#include "exact_state.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "resources.hpp"
#include "simulate.hpp"
#include "statevector.hpp"
