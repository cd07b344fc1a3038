#pragma once

#include "murank/asymptotics.hpp"
#include "murank/bilinear.hpp"
#include "murank/bound.hpp"
#include "murank/constants.hpp"
#include "murank/errors.hpp"
#include "murank/field.hpp"
#include "murank/rational.hpp"
#include "murank/selfcheck.hpp"
#include "murank/tower.hpp"
