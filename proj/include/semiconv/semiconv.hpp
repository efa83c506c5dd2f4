/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "semiconv/bignat.hpp"
#include "semiconv/expr.hpp"
#include "semiconv/image.hpp"
#include "semiconv/keyed_vector.hpp"
#include "semiconv/keys.hpp"
#include "semiconv/poly.hpp"
#include "semiconv/prng.hpp"
#include "semiconv/regexp.hpp"
#include "semiconv/scalars.hpp"
#include "semiconv/series.hpp"
#include "semiconv/signal.hpp"
#include "semiconv/trie.hpp"
#include "semiconv/utf8.hpp"
