#pragma once

#include "bitio.hpp"
#include "codec.hpp"
#include "cost_model.hpp"
#include "multilayer_index.hpp"
#include "oracle.hpp"
#include "sliding_window_tree.hpp"
