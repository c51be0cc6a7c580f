import type { MoodInfo } from '../src/api';

// Server catalog order, mirrored from /api/moods.
export const CATALOG: MoodInfo[] = [
  { value: 'excited', valence: 1, arousal: 1 },
  { value: 'cheerful', valence: 1, arousal: 1 },
  { value: 'relaxed', valence: 1, arousal: -1 },
  { value: 'calm', valence: 1, arousal: -1 },
  { value: 'neutral', valence: 0, arousal: 0 },
  { value: 'bored', valence: -1, arousal: -1 },
  { value: 'sad', valence: -1, arousal: -1 },
  { value: 'irritated', valence: -1, arousal: 1 },
  { value: 'tense', valence: -1, arousal: 1 },
];

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export function mount(): HTMLElement {
  const root = document.createElement('div');
  document.body.append(root);
  return root;
}
