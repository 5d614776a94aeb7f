#pragma once

#include "moncal/autocorr.hpp"
#include "moncal/decompose.hpp"
#include "moncal/descriptive.hpp"
#include "moncal/error.hpp"
#include "moncal/ingest.hpp"
#include "moncal/linmodel.hpp"
#include "moncal/logit.hpp"
#include "moncal/render.hpp"
#include "moncal/report.hpp"
#include "moncal/serialize.hpp"
#include "moncal/special.hpp"
#include "moncal/svg.hpp"
