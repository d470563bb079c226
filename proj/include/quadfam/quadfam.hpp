#pragma once

#include <quadfam/corpus.hpp>
#include <quadfam/errors.hpp>
#include <quadfam/exact.hpp>
#include <quadfam/quadrature.hpp>
#include <quadfam/rational.hpp>
