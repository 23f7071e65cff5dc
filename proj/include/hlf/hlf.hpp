#pragma once

#include <hlf/classify.hpp>
#include <hlf/convolve.hpp>
#include <hlf/duality.hpp>
#include <hlf/elements.hpp>
#include <hlf/error.hpp>
#include <hlf/foundations.hpp>
#include <hlf/io.hpp>
#include <hlf/nets.hpp>
#include <hlf/topology.hpp>
