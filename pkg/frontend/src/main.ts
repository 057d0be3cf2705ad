import { mountConsole } from './console.js';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');
void mountConsole(root).start();
