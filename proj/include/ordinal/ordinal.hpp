#pragma once

#include "ordinal/bounds.hpp"
#include "ordinal/cli.hpp"
#include "ordinal/embedding.hpp"
#include "ordinal/error.hpp"
#include "ordinal/harness.hpp"
#include "ordinal/order.hpp"
#include "ordinal/random.hpp"
#include "ordinal/report.hpp"
#include "ordinal/term.hpp"
#include "ordinal/text.hpp"
