#pragma once

#include "encnet/diffusion.hpp"
#include "encnet/encounters.hpp"
#include "encnet/growth.hpp"
#include "encnet/ingest.hpp"
#include "encnet/io.hpp"
#include "encnet/parallel.hpp"
#include "encnet/powerlaw.hpp"
#include "encnet/rng.hpp"
#include "encnet/structural.hpp"
#include "encnet/temporal.hpp"
#include "encnet/types.hpp"
#include "encnet/version.hpp"
