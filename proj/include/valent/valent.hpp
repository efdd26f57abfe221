#pragma once

#include <valent/cones.hpp>
#include <valent/entropy.hpp>
#include <valent/field.hpp>
#include <valent/lattice.hpp>
#include <valent/matrix.hpp>
#include <valent/tropical.hpp>
#include <valent/verify.hpp>
