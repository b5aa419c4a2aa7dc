#pragma once

#include "factorix/abelian.hpp"
#include "factorix/characters.hpp"
#include "factorix/error.hpp"
#include "factorix/factorization.hpp"
#include "factorix/json_io.hpp"
#include "factorix/predict.hpp"
#include "factorix/primary.hpp"
#include "factorix/rational.hpp"
#include "factorix/report.hpp"
#include "factorix/tblock.hpp"
#include "factorix/verify.hpp"
