#pragma once

// Umbrella header for the engine (everything except the HTTP transport).

#include "segre/error.hpp"
#include "segre/explorer.hpp"
#include "segre/glue.hpp"
#include "segre/io.hpp"
#include "segre/laurent.hpp"
#include "segre/seed.hpp"
#include "segre/service.hpp"
#include "segre/tensor.hpp"
#include "segre/theorem.hpp"
