/** Fixed category-to-color bijection for inspiration chips. */

import type { Category } from './types.js';

export const CATEGORY_COLORS: Record<Category, string> = {
  nature: '#2e9e44', // green
  architecture: '#2d6fd1', // blue
  fashion: '#8e44ad', // purple
};

export function categoryColor(category: Category): string {
  return CATEGORY_COLORS[category];
}
