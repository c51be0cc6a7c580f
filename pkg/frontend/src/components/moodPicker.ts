import type { MoodInfo } from '../api';
import { el } from '../dom';

// Simple text pictograms; stand-ins for a pictorial mood scale without
// shipping anyone's artwork.
const GLYPHS: Record<string, string> = {
  excited: '\u{1F929}',
  cheerful: '\u{1F604}',
  relaxed: '\u{1F60C}',
  calm: '\u{1F642}',
  neutral: '\u{1F610}',
  bored: '\u{1F971}',
  sad: '\u{1F622}',
  irritated: '\u{1F620}',
  tense: '\u{1F62C}',
};

export interface MoodPickerHandle {
  element: HTMLElement;
  selected(): string | null;
  reset(): void;
}

// Buttons are appended in server catalog order (the DOM order contract) and
// positioned onto a 3x3 valence/arousal grid purely via CSS placement. Each
// grid cell is two columns wide so the paired moods sit side by side.
export function moodPicker(
  catalog: MoodInfo[],
  onPick?: (mood: string) => void,
): MoodPickerHandle {
  let current: string | null = null;
  const buttons: HTMLButtonElement[] = [];
  const occupancy = new Map<string, number>();

  const grid = el('div', { class: 'mood-grid', role: 'group', 'aria-label': 'mood picker' });

  for (const mood of catalog) {
    const row = 2 - mood.arousal; // arousal +1 -> top row, -1 -> bottom
    const baseColumn = (mood.valence + 1) * 2 + 1; // valence -1 -> 1, 0 -> 3, +1 -> 5
    const key = `${row}:${baseColumn}`;
    const offset = occupancy.get(key) ?? 0;
    occupancy.set(key, offset + 1);

    const button = el(
      'button',
      {
        class: 'mood-option',
        type: 'button',
        'data-mood': mood.value,
        onclick: () => {
          current = mood.value;
          for (const other of buttons) other.classList.toggle('selected', other === button);
          onPick?.(mood.value);
        },
      },
      el('span', { class: 'mood-glyph', text: GLYPHS[mood.value] ?? '?' }),
      el('span', { class: 'mood-label', text: mood.value }),
    );
    button.style.gridRow = String(row);
    if (mood.valence === 0 && mood.arousal === 0) {
      button.style.gridColumn = '3 / span 2';
    } else {
      button.style.gridColumn = String(baseColumn + offset);
    }
    buttons.push(button);
    grid.append(button);
  }

  return {
    element: grid,
    selected: () => current,
    reset: () => {
      current = null;
      for (const button of buttons) button.classList.remove('selected');
    },
  };
}
