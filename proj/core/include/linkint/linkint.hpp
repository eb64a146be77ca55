#pragma once

#include "linkint/ambient.hpp"
#include "linkint/chart.hpp"
#include "linkint/checks.hpp"
#include "linkint/cone.hpp"
#include "linkint/integrator.hpp"
#include "linkint/kernel.hpp"
#include "linkint/linking.hpp"
#include "linkint/oracle.hpp"
#include "linkint/parallel.hpp"
#include "linkint/polyline.hpp"
#include "linkint/quadrature.hpp"
#include "linkint/scenes.hpp"
#include "linkint/submanifold.hpp"
#include "linkint/types.hpp"
