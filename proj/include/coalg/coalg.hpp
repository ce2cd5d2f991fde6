#pragma once

// Everything except the command-line front end.

#include "coalg/complex.hpp"
#include "coalg/error.hpp"
#include "coalg/field.hpp"
#include "coalg/generate.hpp"
#include "coalg/graded.hpp"
#include "coalg/io.hpp"
#include "coalg/matrix.hpp"
#include "coalg/structures.hpp"
#include "coalg/transfer.hpp"
