/** Scroll preservation: re-rendering the proof list must not move the view.
 *
 * Guards against the long-standing annoyance where the list snaps back to
 * the top whenever verdicts refresh mid-scroll.
 */

export interface Scrollable {
  scrollTop: number;
  scrollLeft: number;
}

export function preserveScroll<T>(element: Scrollable, update: () => T): T {
  const top = element.scrollTop;
  const left = element.scrollLeft;
  try {
    return update();
  } finally {
    element.scrollTop = top;
    element.scrollLeft = left;
  }
}
