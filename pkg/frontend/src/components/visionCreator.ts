import type { Api, ImageRef, MoodInfo, Vision } from '../api';
import { ApiError } from '../api';
import { el, clear } from '../dom';
import { moodPicker } from './moodPicker';

const CAPTION_MAX = 280;

// Keyword search -> pick a thumbnail (attribution shown) -> caption -> mood.
// If the image provider is down we fall back to a direct image URL field.
export function visionCreator(
  root: HTMLElement,
  api: Api,
  scenarioId: string,
  catalog: MoodInfo[],
  onCreated: (vision: Vision) => void,
): void {
  let selectedImage: ImageRef | null = null;
  let directUrl = '';

  const status = el('p', { class: 'creator-status', text: '' });
  const results = el('div', { class: 'image-results' });
  const fallback = el(
    'div',
    { class: 'url-fallback', hidden: true },
    el('label', { text: 'Image URL ' }),
    el('input', {
      type: 'url',
      class: 'direct-url',
      placeholder: 'https://…',
      oninput: (event: Event) => {
        directUrl = (event.target as HTMLInputElement).value.trim();
        sync();
      },
    }),
  );

  const caption = el('textarea', {
    class: 'caption-input',
    maxlength: String(CAPTION_MAX),
    placeholder: 'What does this image say about the topic?',
    oninput: () => {
      counter.textContent = `${caption.value.length}/${CAPTION_MAX}`;
      sync();
    },
  }) as HTMLTextAreaElement;
  const counter = el('span', { class: 'caption-counter', text: `0/${CAPTION_MAX}` });

  const picker = moodPicker(catalog, () => sync());

  const create = el('button', {
    class: 'primary create-vision',
    type: 'button',
    disabled: true,
    text: 'Share vision',
    onclick: async () => {
      create.disabled = true;
      const body: { caption: string; mood: string; image?: ImageRef; image_url?: string } = {
        caption: caption.value,
        mood: picker.selected()!,
      };
      if (selectedImage) body.image = selectedImage;
      else body.image_url = directUrl;
      try {
        const vision = await api.createVision(scenarioId, body);
        status.textContent = 'Vision shared.';
        onCreated(vision);
      } catch (error) {
        status.textContent = error instanceof Error ? error.message : 'creation failed';
        sync();
      }
    },
  });

  function sync(): void {
    const hasImage = selectedImage !== null || directUrl.length > 0;
    const hasCaption = caption.value.trim().length > 0;
    create.disabled = !(hasImage && hasCaption && picker.selected());
  }

  async function runSearch(keywords: string): Promise<void> {
    if (!keywords.trim()) return;
    status.textContent = 'Searching…';
    try {
      const page = await api.searchImages(keywords);
      clear(results);
      status.textContent = page.results.length ? '' : 'No images found.';
      for (const image of page.results) {
        const figure = el('figure', { class: 'image-result' });
        figure.append(
          el('img', {
            src: image.thumbnail_url,
            alt: image.attribution || 'search result',
            onclick: () => {
              selectedImage = image;
              for (const other of Array.from(results.children)) {
                other.classList.toggle('selected', other === figure);
              }
              sync();
            },
          }),
          el('figcaption', { class: 'attribution', text: image.attribution }),
        );
        results.append(figure);
      }
    } catch (error) {
      if (error instanceof ApiError && error.code === 'provider_unavailable') {
        status.textContent = 'Image search is unavailable; paste an image URL instead.';
        fallback.hidden = false;
        return;
      }
      status.textContent = error instanceof Error ? error.message : 'search failed';
    }
  }

  const searchBox = el('input', {
    type: 'search',
    class: 'image-search',
    placeholder: 'Search images by keyword…',
    onkeydown: (event: Event) => {
      if ((event as KeyboardEvent).key === 'Enter') {
        event.preventDefault();
        runSearch((event.target as HTMLInputElement).value);
      }
    },
  }) as HTMLInputElement;

  clear(root).append(
    el(
      'section',
      { class: 'vision-creator' },
      el('h2', { text: 'Share your vision' }),
      el(
        'div',
        { class: 'search-row' },
        searchBox,
        el('button', {
          type: 'button',
          class: 'search-button',
          text: 'Search',
          onclick: () => runSearch(searchBox.value),
        }),
      ),
      results,
      fallback,
      el('div', { class: 'caption-row' }, caption, counter),
      el('h3', { text: 'How does it make you feel?' }),
      picker.element,
      create,
      status,
    ),
  );
}
