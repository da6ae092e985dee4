#pragma once

#include "xlingmap/cluster.hpp"
#include "xlingmap/corpus.hpp"
#include "xlingmap/editdist.hpp"
#include "xlingmap/embeddings.hpp"
#include "xlingmap/error.hpp"
#include "xlingmap/evaluate.hpp"
#include "xlingmap/fingerprint.hpp"
#include "xlingmap/lexicon.hpp"
#include "xlingmap/linalg.hpp"
#include "xlingmap/mapping.hpp"
#include "xlingmap/prng.hpp"
#include "xlingmap/synth.hpp"
#include "xlingmap/text.hpp"
