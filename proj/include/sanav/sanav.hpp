#ifndef SANAV_SANAV_HPP
#define SANAV_SANAV_HPP

#include "sanav/geometry.hpp"
#include "sanav/global_planner.hpp"
#include "sanav/local_planner.hpp"
#include "sanav/log_io.hpp"
#include "sanav/metrics.hpp"
#include "sanav/objectives.hpp"
#include "sanav/paccet.hpp"
#include "sanav/scenario_io.hpp"
#include "sanav/simulator.hpp"
#include "sanav/social_goal.hpp"
#include "sanav/suite.hpp"
#include "sanav/trajectory.hpp"
#include "sanav/world.hpp"

#endif
