#pragma once

#include "ncfeyn/amplitude.hpp"
#include "ncfeyn/analysis.hpp"
#include "ncfeyn/graph_io.hpp"
#include "ncfeyn/mellin.hpp"
#include "ncfeyn/model.hpp"
#include "ncfeyn/oracle.hpp"
#include "ncfeyn/ribbon.hpp"
