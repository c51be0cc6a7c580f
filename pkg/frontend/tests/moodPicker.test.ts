import { beforeEach, describe, expect, it } from 'vitest';

import { moodPicker } from '../src/components/moodPicker';
import { CATALOG, mount } from './helpers';

describe('mood picker', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('renders exactly the 9 catalog moods in server order', () => {
    const picker = moodPicker(CATALOG);
    mount().append(picker.element);
    const buttons = Array.from(document.querySelectorAll('.mood-option'));
    expect(buttons).toHaveLength(9);
    expect(buttons.map((b) => b.getAttribute('data-mood'))).toEqual(CATALOG.map((m) => m.value));
  });

  it('places moods on the valence/arousal grid', () => {
    const picker = moodPicker(CATALOG);
    mount().append(picker.element);
    const through = (mood: string) =>
      document.querySelector<HTMLElement>(`[data-mood="${mood}"]`)!.style;
    // high-arousal moods on the top row, low-arousal on the bottom
    expect(through('excited').gridRow).toBe('1');
    expect(through('tense').gridRow).toBe('1');
    expect(through('neutral').gridRow).toBe('2');
    expect(through('calm').gridRow).toBe('3');
    // negative valence on the left columns, positive on the right
    expect(through('irritated').gridColumn).toBe('1');
    expect(through('excited').gridColumn).toBe('5');
  });

  it('reports the picked mood and highlights it', () => {
    let picked: string | null = null;
    const picker = moodPicker(CATALOG, (mood) => {
      picked = mood;
    });
    mount().append(picker.element);
    const sad = document.querySelector<HTMLButtonElement>('[data-mood="sad"]')!;
    sad.click();
    expect(picked).toBe('sad');
    expect(picker.selected()).toBe('sad');
    expect(sad.classList.contains('selected')).toBe(true);
    picker.reset();
    expect(picker.selected()).toBeNull();
  });

  it('labels every pictogram with the mood name', () => {
    const picker = moodPicker(CATALOG);
    mount().append(picker.element);
    const labels = Array.from(document.querySelectorAll('.mood-label')).map(
      (node) => node.textContent,
    );
    expect(labels).toEqual(CATALOG.map((m) => m.value));
  });
});
