#pragma once

#include "ekr/binomial.hpp"
#include "ekr/core.hpp"
#include "ekr/constructions.hpp"
#include "ekr/classification.hpp"
#include "ekr/shifting.hpp"
#include "ekr/trace.hpp"
#include "ekr/separability.hpp"
#include "ekr/search.hpp"
#include "ekr/io.hpp"
#include "ekr/verify.hpp"
