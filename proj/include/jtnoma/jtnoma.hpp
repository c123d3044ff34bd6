/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "jtnoma/analytic.hpp"
#include "jtnoma/channel.hpp"
#include "jtnoma/errors.hpp"
#include "jtnoma/geometry.hpp"
#include "jtnoma/harness.hpp"
#include "jtnoma/montecarlo.hpp"
#include "jtnoma/schemes.hpp"
#include "jtnoma/special.hpp"
