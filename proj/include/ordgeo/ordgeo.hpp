/// @file  ordgeo.hpp
/// @brief Umbrella header pulling in the whole library.

#pragma once

#include "ordgeo/basis.hpp"
#include "ordgeo/data.hpp"
#include "ordgeo/embed.hpp"
#include "ordgeo/errors.hpp"
#include "ordgeo/eval.hpp"
#include "ordgeo/geometry.hpp"
#include "ordgeo/io.hpp"
#include "ordgeo/oracle.hpp"
#include "ordgeo/random.hpp"
#include "ordgeo/ranks.hpp"
#include "ordgeo/refine.hpp"
#include "ordgeo/soe.hpp"
#include "ordgeo/version.hpp"
