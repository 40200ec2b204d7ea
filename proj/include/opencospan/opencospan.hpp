#pragma once

#include "errors.hpp"
#include "finset.hpp"
#include "multiset.hpp"
#include "systems.hpp"
#include "polynomial.hpp"
#include "decoration.hpp"
#include "cospan.hpp"
#include "two_cell.hpp"
#include "grothendieck.hpp"
#include "dynam.hpp"
