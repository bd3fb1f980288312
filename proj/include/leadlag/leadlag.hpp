#pragma once

#include "leadlag/error.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/special.hpp"
#include "leadlag/jitter.hpp"
#include "leadlag/knn.hpp"
#include "leadlag/metrics.hpp"
#include "leadlag/netbuild.hpp"
#include "leadlag/rank.hpp"
#include "leadlag/describe.hpp"
#include "leadlag/serialize.hpp"
#include "leadlag/svg.hpp"
#include "leadlag/config.hpp"
#include "leadlag/synthetic.hpp"
#include "leadlag/app.hpp"
