#pragma once

#include "adversary.hpp"
#include "bounds.hpp"
#include "channel.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "io.hpp"
#include "knowledge.hpp"
#include "oracle.hpp"
#include "qtree.hpp"
#include "report.hpp"
#include "station_set.hpp"
#include "strategy.hpp"
