#pragma once

#include "stp12/core.hpp"
#include "stp12/partition.hpp"
#include "stp12/matching.hpp"
#include "stp12/exact.hpp"
#include "stp12/structures.hpp"
#include "stp12/heuristics.hpp"
#include "stp12/sixphase.hpp"
#include "stp12/audit.hpp"
#include "stp12/io/stp.hpp"
#include "stp12/io/generators.hpp"
#include "stp12/io/report.hpp"
