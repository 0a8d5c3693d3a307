#pragma once

// Umbrella header for the F2A red-team toolkit.

#include "f2a/category.hpp"
#include "f2a/corpus.hpp"
#include "f2a/digest.hpp"
#include "f2a/errors.hpp"
#include "f2a/feigner.hpp"
#include "f2a/guard.hpp"
#include "f2a/judge.hpp"
#include "f2a/obfuscator.hpp"
#include "f2a/record.hpp"
#include "f2a/runner.hpp"
#include "f2a/scaffold.hpp"
#include "f2a/splitmix64.hpp"
#include "f2a/transport.hpp"
