#pragma once

#include <plde/bounds.hpp>
#include <plde/io.hpp>
#include <plde/parse.hpp>
#include <plde/transform.hpp>
#include <plde/verify.hpp>
