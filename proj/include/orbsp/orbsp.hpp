#pragma once

#include "orbsp/builders.hpp"
#include "orbsp/colored.hpp"
#include "orbsp/configs.hpp"
#include "orbsp/error.hpp"
#include "orbsp/f2complex.hpp"
#include "orbsp/field.hpp"
#include "orbsp/io.hpp"
#include "orbsp/jacobian.hpp"
#include "orbsp/orbit.hpp"
#include "orbsp/pathalg.hpp"
#include "orbsp/quiver.hpp"
#include "orbsp/species.hpp"
#include "orbsp/spmut.hpp"
#include "orbsp/surface.hpp"
#include "orbsp/triangulation.hpp"
