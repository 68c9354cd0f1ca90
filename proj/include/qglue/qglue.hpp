#pragma once

// Convenience umbrella: pulls in the full library surface.

#include "coeffpoly.hpp"
#include "diffcombo.hpp"
#include "elliptic.hpp"
#include "genus_basis.hpp"
#include "glue_group.hpp"
#include "json_io.hpp"
#include "laurent.hpp"
#include "node.hpp"
#include "period.hpp"
#include "qtrunc.hpp"
#include "render.hpp"
#include "rng.hpp"
#include "symbols.hpp"
#include "verify.hpp"
