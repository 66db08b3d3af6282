#pragma once

#include "rational.hpp"
#include "laurent.hpp"
#include "fraction.hpp"
#include "forms.hpp"
#include "mat2.hpp"
#include "group.hpp"
#include "reps.hpp"
#include "braid.hpp"
#include "orbit.hpp"
#include "connection.hpp"
#include "garnier.hpp"
#include "suites.hpp"
