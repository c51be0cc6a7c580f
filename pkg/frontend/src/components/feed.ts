import type { Api, Vision } from '../api';
import { el, clear } from '../dom';

const POLL_MS = 10_000;

// Public vision feed, newest first, refreshed by polling. Moods are public
// here; only the guessing game hides them.
export function feed(root: HTMLElement, api: Api, scenarioId: string): () => void {
  const list = el('div', { class: 'feed-list' });
  const status = el('p', { class: 'feed-status', text: 'Loading…' });
  let page = 1;

  const pager = el('div', { class: 'feed-pager' },
    el('button', { type: 'button', text: 'Newer', onclick: () => { page = Math.max(1, page - 1); void refresh(); } }),
    el('button', { type: 'button', text: 'Older', onclick: () => { page += 1; void refresh(); } }),
  );

  function card(vision: Vision): HTMLElement {
    return el('article', { class: 'vision-card', 'data-vision': vision.vision_id },
      el('img', { src: vision.image.thumbnail_url, alt: vision.caption }),
      el('p', { class: 'caption', text: vision.caption }),
      el('p', { class: 'mood-tag', text: vision.mood }),
      el('p', { class: 'attribution', text: vision.image.attribution }),
    );
  }

  async function refresh(): Promise<void> {
    try {
      const result = await api.feed(scenarioId, page);
      if (!result.items.length && page > 1) {
        page -= 1; // walked past the end
        return refresh();
      }
      clear(list);
      for (const vision of result.items) list.append(card(vision));
      status.textContent = result.total === 0 ? 'No visions yet. Be the first!' : '';
    } catch (error) {
      status.textContent = error instanceof Error ? error.message : 'feed unavailable';
    }
  }

  clear(root).append(el('section', { class: 'feed' }, el('h2', { text: 'Community visions' }), status, list, pager));
  void refresh();
  const timer = setInterval(() => void refresh(), POLL_MS);
  return () => clearInterval(timer);
}
