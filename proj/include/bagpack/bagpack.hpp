#pragma once

#include "bagpack/contexts.hpp"
#include "bagpack/corpus.hpp"
#include "bagpack/error.hpp"
#include "bagpack/eval.hpp"
#include "bagpack/features.hpp"
#include "bagpack/io.hpp"
#include "bagpack/pipeline.hpp"
#include "bagpack/svm.hpp"
#include "bagpack/synth.hpp"
#include "bagpack/util.hpp"
